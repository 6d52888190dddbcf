#include "evanescent/rank.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace evanescent {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kAngleTolerance = 1e-12;

bool angle_equal(double x, double y) {
  const double diff = std::abs(wrap_angle(x) - wrap_angle(y));
  return diff < kAngleTolerance || kTwoPi - diff < kAngleTolerance;
}

// A real component is the sum of complex components at +omega and -omega;
// the count doubles only if all of those remain distinct triples.
bool real_pairs_degenerate(std::span<const EvanescentComponent> comps) {
  for (std::size_t i = 0; i < comps.size(); ++i) {
    if (angle_equal(comps[i].omega, -comps[i].omega)) return true;
    for (std::size_t j = i + 1; j < comps.size(); ++j) {
      if (comps[i].slope.a() == comps[j].slope.a() && comps[i].slope.b() == comps[j].slope.b() &&
          angle_equal(comps[i].omega, -comps[j].omega)) {
        return true;
      }
    }
  }
  return false;
}

// Singular values by divide and conquer, falling back to one-sided Jacobi
// when the faster path breaks down on complex input.
Eigen::VectorXd svd_values(const Eigen::MatrixXcd& matrix) {
  Eigen::BDCSVD<Eigen::MatrixXcd> svd(matrix);
  Eigen::VectorXd sv = svd.singularValues();
  if (sv.allFinite()) return sv;
  Eigen::JacobiSVD<Eigen::MatrixXcd> jacobi(matrix);
  sv = jacobi.singularValues();
  if (!sv.allFinite()) throw std::runtime_error("singular value decomposition did not converge");
  return sv;
}

NumericalRank finish_rank(Eigen::VectorXd sv, const TolerancePolicy& policy, Eigen::Index rows,
                          Eigen::Index cols) {
  std::sort(sv.data(), sv.data() + sv.size(), std::greater<>());
  NumericalRank out;
  const double sigma_max = sv.size() > 0 ? sv[0] : 0.0;
  out.threshold = policy.threshold(sigma_max, rows, cols);
  for (Eigen::Index i = 0; i < sv.size(); ++i) {
    if (sv[i] > out.threshold) ++out.rank;
  }
  out.singular_values = std::move(sv);
  return out;
}

}  // namespace

const char* to_string(Regime regime) noexcept {
  switch (regime) {
    case Regime::interior:
      return "interior";
    case Regime::saturated:
      return "saturated";
    case Regime::outside_theorem_regime:
      return "outside_theorem_regime";
  }
  return "unknown";
}

RankPrediction predict_rank(std::span<const EvanescentComponent> comps, const LatticeRect& rect,
                            bool real_valued) {
  check_distinct_triples(comps);
  const Index n = rect.rows();
  const Index m = rect.cols();
  const Index mult = real_valued ? 2 : 1;

  RankPrediction pred;
  Index sa = 0;
  Index sb = 0;
  for (const auto& c : comps) {
    const Index a = std::abs(c.slope.a());
    const Index b = std::abs(c.slope.b());
    pred.per_component_counts.push_back(mult * (n * a + m * b) - mult * mult * a * b);
    sa += mult * a;
    sb += mult * b;
  }
  pred.raw_value = n * sa + m * sb - sa * sb;
  pred.formula_value = std::min(rect.size(), pred.raw_value);
  pred.clamped = pred.raw_value > rect.size();

  if (sa >= m || sb >= n || (real_valued && real_pairs_degenerate(comps))) {
    pred.regime = Regime::outside_theorem_regime;
  } else if (pred.raw_value >= rect.size()) {
    pred.regime = Regime::saturated;
  } else {
    pred.regime = Regime::interior;
  }
  return pred;
}

double TolerancePolicy::threshold(double sigma_max, Eigen::Index rows, Eigen::Index cols) const {
  if (relative) return *relative * sigma_max;
  const double dim = static_cast<double>(std::max(rows, cols));
  return safety_factor * dim * std::numeric_limits<double>::epsilon() * sigma_max;
}

double NumericalRank::gap_ratio() const {
  if (rank == 0 || rank >= singular_values.size()) return std::numeric_limits<double>::infinity();
  const double next = singular_values[rank];
  if (next <= 0.0) return std::numeric_limits<double>::infinity();
  return singular_values[rank - 1] / next;
}

NumericalRank numerical_rank(const Eigen::MatrixXcd& hermitian, const TolerancePolicy& policy) {
  if (hermitian.rows() != hermitian.cols()) throw std::invalid_argument("numerical_rank needs a square matrix");
  if (!hermitian.allFinite()) throw std::invalid_argument("matrix has non-finite entries");
  if (hermitian.size() == 0) return {};
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(hermitian, Eigen::EigenvaluesOnly);
  // Tridiagonal QR can stall on heavily repeated spectra.
  Eigen::VectorXd sv = solver.info() == Eigen::Success ? Eigen::VectorXd(solver.eigenvalues().cwiseAbs())
                                                       : svd_values(hermitian);
  return finish_rank(std::move(sv), policy, hermitian.rows(), hermitian.cols());
}

NumericalRank numerical_rank_general(const Eigen::MatrixXcd& matrix, const TolerancePolicy& policy) {
  if (!matrix.allFinite()) throw std::invalid_argument("matrix has non-finite entries");
  if (matrix.size() == 0) return {};
  return finish_rank(svd_values(matrix), policy, matrix.rows(), matrix.cols());
}

}  // namespace evanescent
