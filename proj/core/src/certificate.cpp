#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>

#include "evanescent/rank.hpp"

namespace evanescent {

namespace {

constexpr std::size_t kMaxCertificateComponents = 16;

// Nonempty subsets of {0..q-1} ordered by size, then lexicographically by
// their sorted index lists.
std::vector<std::uint32_t> ordered_subsets(std::size_t q) {
  std::vector<std::uint32_t> masks;
  for (std::uint32_t mask = 1; mask < (1u << q); ++mask) masks.push_back(mask);
  auto key = [](std::uint32_t mask) {
    std::vector<int> idx;
    for (int i = 0; i < 32; ++i) {
      if (mask & (1u << i)) idx.push_back(i);
    }
    return idx;
  };
  std::stable_sort(masks.begin(), masks.end(), [&](std::uint32_t x, std::uint32_t y) {
    const int px = std::popcount(x);
    const int py = std::popcount(y);
    if (px != py) return px < py;
    return key(x) < key(y);
  });
  return masks;
}

LatticePoint shifted(LatticePoint target, std::uint32_t mask, std::span<const Index> shifts,
                     std::span<const EvanescentComponent> comps) {
  LatticePoint p = target;
  for (std::size_t i = 0; i < comps.size(); ++i) {
    if (mask & (1u << i)) {
      const LatticePoint step = comps[i].slope.shift(shifts[i]);
      p.n += step.n;
      p.m += step.m;
    }
  }
  return p;
}

void check_component_count(std::size_t q) {
  if (q > kMaxCertificateComponents) {
    throw std::invalid_argument("certificates support at most 16 components");
  }
}

}  // namespace

bool DependencyCertificate::trivial() const {
  return std::any_of(shifts.begin(), shifts.end(), [](Index t) { return t == 0; });
}

std::vector<CertificateTerm> DependencyCertificate::merged_terms() const {
  std::map<LatticePoint, Complex> acc;
  for (const auto& term : subset_terms) acc[term.point] += term.coefficient;
  std::vector<CertificateTerm> out;
  out.reserve(acc.size());
  for (const auto& [point, coeff] : acc) out.push_back({point, coeff});
  return out;
}

bool shifts_admissible(LatticePoint target, std::span<const Index> shifts,
                       std::span<const EvanescentComponent> comps, const LatticeRect& rect) {
  if (shifts.size() != comps.size() || !rect.contains(target)) return false;
  check_component_count(comps.size());
  for (std::uint32_t mask = 1; mask < (1u << comps.size()); ++mask) {
    if (!rect.contains(shifted(target, mask, shifts, comps))) return false;
  }
  return true;
}

DependencyCertificate make_certificate(LatticePoint target, std::span<const Index> shifts,
                                       std::span<const EvanescentComponent> comps,
                                       const LatticeRect& rect) {
  check_component_count(comps.size());
  if (shifts.size() != comps.size()) {
    throw std::invalid_argument("shift tuple length must match the component count");
  }
  if (!shifts_admissible(target, shifts, comps, rect)) {
    throw std::invalid_argument("shift tuple is not admissible for this target");
  }

  DependencyCertificate cert;
  cert.target = target;
  cert.shifts.assign(shifts.begin(), shifts.end());
  for (std::uint32_t mask : ordered_subsets(comps.size())) {
    double phase = 0.0;
    for (std::size_t i = 0; i < comps.size(); ++i) {
      if (mask & (1u << i)) {
        phase += static_cast<double>(comps[i].slope.orientation() * shifts[i]) * comps[i].omega;
      }
    }
    const double sign = (std::popcount(mask) % 2 == 1) ? 1.0 : -1.0;
    cert.subset_terms.push_back({shifted(target, mask, shifts, comps), sign * std::polar(1.0, phase)});
  }
  return cert;
}

std::optional<DependencyCertificate> find_certificate(LatticePoint target,
                                                      std::span<const EvanescentComponent> comps,
                                                      const LatticeRect& rect, ShiftSign sign) {
  check_component_count(comps.size());
  if (comps.empty() || !rect.contains(target)) return std::nullopt;

  // Singleton subsets restrict each t_i to its own Diophantine family.
  const Index bound = std::max(rect.rows(), rect.cols());
  std::vector<std::vector<Index>> choices;
  for (const auto& c : comps) {
    std::vector<Index> ts;
    for (Index t : diophantine_shifts(target, c.slope, rect)) {
      if (t == 0 || std::abs(t) > bound) continue;
      if (sign == ShiftSign::positive && t < 0) continue;
      ts.push_back(t);
    }
    choices.push_back(std::move(ts));
  }

  const std::size_t q = comps.size();
  std::vector<Index> tuple(q, 0);
  std::optional<DependencyCertificate> found;

  // Depth-first fill of tuples whose L1 norm is exactly `remaining`.
  std::function<bool(std::size_t, Index)> fill = [&](std::size_t i, Index remaining) -> bool {
    if (i == q) {
      if (remaining != 0) return false;
      if (shifts_admissible(target, tuple, comps, rect)) {
        found = make_certificate(target, tuple, comps, rect);
        return true;
      }
      return false;
    }
    for (Index t : choices[i]) {
      if (std::abs(t) > remaining) continue;
      tuple[i] = t;
      if (fill(i + 1, remaining - std::abs(t))) return true;
    }
    tuple[i] = 0;
    return false;
  };

  const Index max_norm = static_cast<Index>(q) * bound;
  for (Index norm = static_cast<Index>(q); norm <= max_norm; ++norm) {
    if (fill(0, norm)) return found;
  }
  return std::nullopt;
}

double verify_certificate(const DependencyCertificate& cert, const CovarianceModel& model) {
  if (model.kind() != FieldKind::complex_valued) {
    throw std::invalid_argument("certificates are defined for the complex field model");
  }
  const LatticeRect& rect = model.rect();
  const Eigen::MatrixXcd c = model.stacked_coefficients();
  const Eigen::VectorXcd lhs = c.col(rect.index(cert.target));
  Eigen::VectorXcd rhs = Eigen::VectorXcd::Zero(c.rows());
  for (const auto& term : cert.merged_terms()) {
    rhs += std::conj(term.coefficient) * c.col(rect.index(term.point));
  }
  const double scale = lhs.norm();
  const double diff = (lhs - rhs).norm();
  return scale > 0.0 ? diff / scale : diff;
}

double verify_certificate(const DependencyCertificate& cert, const ComplexField& field) {
  const Complex lhs = field(cert.target.n, cert.target.m);
  Complex rhs{0.0, 0.0};
  for (const auto& term : cert.merged_terms()) rhs += term.coefficient * field(term.point.n, term.point.m);
  const double scale = std::abs(lhs);
  const double diff = std::abs(lhs - rhs);
  return scale > 0.0 ? diff / scale : diff;
}

namespace {

struct Bands {
  Index sa = 0;
  Index b_pos = 0;
  Index b_neg = 0;
};

Bands interior_bands(std::span<const EvanescentComponent> comps, const LatticeRect& rect) {
  const RankPrediction pred = predict_rank(comps, rect, false);
  if (pred.regime == Regime::outside_theorem_regime) {
    throw RegimeError(
        "configuration is outside the interior regime (sum|a| >= M or sum|b| >= N); "
        "use the numerical rank oracle instead");
  }
  Bands bands;
  for (const auto& c : comps) {
    bands.sa += c.slope.a();
    if (c.slope.b() > 0) bands.b_pos += c.slope.b();
    if (c.slope.b() < 0) bands.b_neg -= c.slope.b();
  }
  return bands;
}

bool in_dependent_band(LatticePoint p, const Bands& bands, const LatticeRect& rect) {
  return p.n >= bands.b_neg && p.n <= rect.rows() - 1 - bands.b_pos && p.m >= bands.sa;
}

}  // namespace

std::vector<LatticePoint> dependent_point_set(std::span<const EvanescentComponent> comps,
                                              const LatticeRect& rect) {
  const Bands bands = interior_bands(comps, rect);
  std::vector<LatticePoint> out;
  if (comps.empty()) return out;
  for (Index idx = 0; idx < rect.size(); ++idx) {
    const LatticePoint p = rect.point(idx);
    if (in_dependent_band(p, bands, rect)) out.push_back(p);
  }
  return out;
}

std::vector<LatticePoint> independent_point_set(std::span<const EvanescentComponent> comps,
                                                const LatticeRect& rect) {
  const Bands bands = interior_bands(comps, rect);
  std::vector<LatticePoint> out;
  if (comps.empty()) return out;
  for (Index idx = 0; idx < rect.size(); ++idx) {
    const LatticePoint p = rect.point(idx);
    if (!in_dependent_band(p, bands, rect)) out.push_back(p);
  }
  return out;
}

}  // namespace evanescent
