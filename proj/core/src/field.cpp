#include "evanescent/field.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

namespace evanescent {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kAngleTolerance = 1e-12;

std::mt19937_64 make_engine(std::uint64_t seed, DrawKey key, std::uint64_t stream) {
  auto lo = [](std::uint64_t v) { return static_cast<std::uint32_t>(v & 0xffffffffu); };
  auto hi = [](std::uint64_t v) { return static_cast<std::uint32_t>(v >> 32); };
  std::seed_seq seq{lo(seed), hi(seed), lo(key.draw), hi(key.draw),
                    lo(key.slot), hi(key.slot), lo(stream), hi(stream)};
  return std::mt19937_64(seq);
}

// Unit-variance real AR(1) or white sequence scaled by the innovation sd.
template <typename Draw>
void fill_process(const ProcessSpec& spec, Index length, Draw&& draw_innovation,
                  std::span<double> out) {
  const double sd = std::sqrt(spec.variance);
  if (spec.kind == ProcessKind::white || spec.ar_coefficient == 0.0) {
    for (Index i = 0; i < length; ++i) out[i] = sd * draw_innovation();
    return;
  }
  const double phi = spec.ar_coefficient;
  double x = sd / std::sqrt(1.0 - phi * phi) * draw_innovation();
  out[0] = x;
  for (Index i = 1; i < length; ++i) {
    x = phi * x + sd * draw_innovation();
    out[i] = x;
  }
}

// Process sample s(k) lives at vector position k - k_min.
struct ProcessWindow {
  ProcessIndexRange range;
  Index offset(LatticePoint p, const SlopePair& s) const { return s.process_index(p) - range.k_min; }
};

}  // namespace

ProcessSpec ProcessSpec::white(double variance, std::uint64_t seed) {
  ProcessSpec spec{ProcessKind::white, variance, 0.0, seed};
  spec.validate();
  return spec;
}

ProcessSpec ProcessSpec::ar1(double variance, double ar, std::uint64_t seed) {
  ProcessSpec spec{ProcessKind::ar1, variance, ar, seed};
  spec.validate();
  return spec;
}

void ProcessSpec::validate() const {
  if (!(variance > 0.0) || !std::isfinite(variance)) {
    throw std::invalid_argument("process variance must be positive and finite");
  }
  if (kind == ProcessKind::ar1 && !(std::abs(ar_coefficient) < 1.0)) {
    throw std::invalid_argument("AR(1) coefficient must satisfy |ar| < 1");
  }
  if (kind == ProcessKind::white && ar_coefficient != 0.0) {
    throw std::invalid_argument("white process cannot carry an AR coefficient");
  }
}

double ProcessSpec::autocovariance(Index lag) const {
  if (kind == ProcessKind::white) return lag == 0 ? variance : 0.0;
  const double phi = ar_coefficient;
  return variance * std::pow(phi, static_cast<double>(lag < 0 ? -lag : lag)) / (1.0 - phi * phi);
}

EvanescentComponent::EvanescentComponent(SlopePair slope_, double omega_, ProcessSpec process_)
    : slope(slope_), omega(wrap_angle(omega_)), process(process_) {
  if (!std::isfinite(omega_)) throw std::invalid_argument("modulation frequency must be finite");
  process.validate();
}

double wrap_angle(double omega) noexcept {
  double w = std::fmod(omega, kTwoPi);
  if (w < 0.0) w += kTwoPi;
  if (w >= kTwoPi) w = 0.0;
  return w;
}

void check_distinct_triples(std::span<const EvanescentComponent> comps) {
  for (std::size_t i = 0; i < comps.size(); ++i) {
    for (std::size_t j = i + 1; j < comps.size(); ++j) {
      if (comps[i].slope.a() != comps[j].slope.a() || comps[i].slope.b() != comps[j].slope.b()) {
        continue;
      }
      const double diff = std::abs(comps[i].omega - comps[j].omega);
      if (diff < kAngleTolerance || kTwoPi - diff < kAngleTolerance) {
        throw std::invalid_argument("duplicate evanescent triple (a,b,omega) at components " +
                                    std::to_string(i) + " and " + std::to_string(j));
      }
    }
  }
}

ProcessIndexRange modulating_indices(const SlopePair& slope, const LatticeRect& rect) noexcept {
  const Index row_span = (rect.rows() - 1) * slope.a();
  const Index col_span = (rect.cols() - 1) * slope.b();
  if (slope.b() < 0) return {col_span, row_span};
  return {0, row_span + col_span};
}

Eigen::VectorXcd draw_complex_process(const ProcessSpec& spec, Index length, DrawKey key) {
  spec.validate();
  auto engine = make_engine(spec.seed, key, 0);
  std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
  std::vector<double> re(static_cast<std::size_t>(length));
  std::vector<double> im(static_cast<std::size_t>(length));
  // Interleave so that one engine feeds both quadratures in a fixed order.
  std::vector<double> innovations(static_cast<std::size_t>(2 * length));
  for (auto& v : innovations) v = normal(engine);
  std::size_t cursor = 0;
  fill_process(spec, length, [&] { return innovations[cursor++]; }, re);
  fill_process(spec, length, [&] { return innovations[cursor++]; }, im);

  Eigen::VectorXcd s(length);
  for (Index i = 0; i < length; ++i) s[i] = Complex(re[i], im[i]);
  return s;
}

Eigen::VectorXd draw_real_process(const ProcessSpec& spec, Index length, DrawKey key,
                                  std::uint64_t stream) {
  spec.validate();
  auto engine = make_engine(spec.seed, key, stream + 1);
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::VectorXd s(length);
  fill_process(spec, length, [&] { return normal(engine); }, std::span<double>(s.data(), length));
  return s;
}

ComplexField synthesize_component(const EvanescentComponent& comp, const LatticeRect& rect,
                                  DrawKey key) {
  const ProcessWindow window{modulating_indices(comp.slope, rect)};
  const Eigen::VectorXcd s = draw_complex_process(comp.process, window.range.length(), key);

  ComplexField field(rect);
  for (Index n = 0; n < rect.rows(); ++n) {
    for (Index m = 0; m < rect.cols(); ++m) {
      const LatticePoint p{n, m};
      const double phase = comp.omega * static_cast<double>(comp.slope.phase_index(p));
      field(n, m) = s[window.offset(p, comp.slope)] * std::polar(1.0, phase);
    }
  }
  return field;
}

RealField synthesize_real_component(const EvanescentComponent& comp, const LatticeRect& rect,
                                    DrawKey key) {
  const ProcessWindow window{modulating_indices(comp.slope, rect)};
  const Index len = window.range.length();
  const Eigen::VectorXd s = draw_real_process(comp.process, len, key, 0);
  const Eigen::VectorXd t = draw_real_process(comp.process, len, key, 1);

  RealField field(rect);
  for (Index n = 0; n < rect.rows(); ++n) {
    for (Index m = 0; m < rect.cols(); ++m) {
      const LatticePoint p{n, m};
      const double phase = comp.omega * static_cast<double>(comp.slope.phase_index(p));
      const Index k = window.offset(p, comp.slope);
      field(n, m) = s[k] * std::cos(phase) + t[k] * std::sin(phase);
    }
  }
  return field;
}

ComplexField synthesize_sum(std::span<const EvanescentComponent> comps, const LatticeRect& rect,
                            std::uint64_t draw) {
  check_distinct_triples(comps);
  ComplexField total(rect);
  for (std::size_t q = 0; q < comps.size(); ++q) {
    total += synthesize_component(comps[q], rect, DrawKey{draw, q});
  }
  return total;
}

RealField synthesize_real_sum(std::span<const EvanescentComponent> comps, const LatticeRect& rect,
                              std::uint64_t draw) {
  check_distinct_triples(comps);
  RealField total(rect);
  for (std::size_t q = 0; q < comps.size(); ++q) {
    total += synthesize_real_component(comps[q], rect, DrawKey{draw, q});
  }
  return total;
}

}  // namespace evanescent
