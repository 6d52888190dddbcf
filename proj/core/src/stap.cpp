#include "evanescent/stap.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "evanescent/covariance.hpp"
#include "evanescent/rank.hpp"

namespace evanescent::stap {

namespace {

// Slot reserved for receiver noise; component slots are 0..Q-1.
constexpr std::uint64_t kNoiseSlot = std::uint64_t{1} << 32;

}  // namespace

void Scenario::validate() const {
  (void)rect();
  if (!(noise_power > 0.0)) throw std::invalid_argument("noise_power must be positive");
  for (std::size_t i = 0; i < jammers.size(); ++i) {
    if (!(jammers[i].power > 0.0)) throw std::invalid_argument("jammer power must be positive");
    for (std::size_t j = i + 1; j < jammers.size(); ++j) {
      if (wrap_angle(jammers[i].angle_frequency) == wrap_angle(jammers[j].angle_frequency)) {
        throw std::invalid_argument("jammer angle frequencies must be distinct");
      }
    }
  }
  if (clutter) {
    if (clutter->beta < 1) throw std::invalid_argument("clutter slope beta must be a positive integer");
    if (!(clutter->power > 0.0)) throw std::invalid_argument("clutter power must be positive");
  }
}

std::vector<EvanescentComponent> scenario_to_components(const Scenario& sc) {
  sc.validate();
  std::vector<EvanescentComponent> comps;
  for (const auto& j : sc.jammers) {
    comps.emplace_back(SlopePair::make(0, 1), j.angle_frequency, ProcessSpec::white(j.power, sc.seed));
  }
  if (sc.clutter) {
    const auto& c = *sc.clutter;
    // Power is the stationary variance of the ridge process.
    ProcessSpec spec = c.process == ProcessKind::white
                           ? ProcessSpec::white(c.power, sc.seed)
                           : ProcessSpec::ar1(c.power * (1.0 - c.ar_coefficient * c.ar_coefficient),
                                              c.ar_coefficient, sc.seed);
    comps.emplace_back(SlopePair::make(1, c.beta), c.ridge_frequency, spec);
  }
  return comps;
}

Eigen::MatrixXcd interference_only_covariance(const Scenario& sc) {
  const auto comps = scenario_to_components(sc);
  return assemble_gamma(comps, sc.rect()).gamma();
}

Eigen::MatrixXcd interference_covariance(const Scenario& sc) {
  Eigen::MatrixXcd cov = interference_only_covariance(sc);
  cov.diagonal().array() += sc.noise_power;
  return cov;
}

Eigen::MatrixXcd dominant_projection(const Eigen::MatrixXcd& cov, Index r) {
  const Index dim = cov.rows();
  if (r < 0 || r > dim) throw std::out_of_range("projection rank out of range");
  Eigen::MatrixXcd proj = Eigen::MatrixXcd::Identity(dim, dim);
  if (r == 0) return proj;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(cov);
  if (solver.info() == Eigen::Success) {
    // Eigenvalues ascend, so the dominant vectors are the trailing columns.
    const auto u = solver.eigenvectors().rightCols(r);
    proj.noalias() -= u * u.adjoint();
    return proj;
  }
  // For a PSD matrix the leading left singular vectors span the same subspace.
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(cov, Eigen::ComputeFullU);
  if (!svd.singularValues().allFinite()) throw std::runtime_error("eigen-decomposition failed");
  const auto u = svd.matrixU().leftCols(r);
  proj.noalias() -= u * u.adjoint();
  return proj;
}

Eigen::VectorXcd steering_vector(const Target& target, const LatticeRect& rect) {
  Eigen::VectorXcd s(rect.size());
  for (Index idx = 0; idx < rect.size(); ++idx) {
    const LatticePoint p = rect.point(idx);
    const double phase = target.angle_frequency * static_cast<double>(p.n) +
                         target.doppler_frequency * static_cast<double>(p.m);
    s[idx] = target.amplitude * std::polar(1.0, phase);
  }
  return s;
}

SubspaceReport suppression_experiment(const Scenario& sc, Index trials,
                                      std::optional<Index> projection_rank) {
  if (trials < 1) throw std::invalid_argument("suppression experiment needs at least one trial");
  const auto comps = scenario_to_components(sc);
  const LatticeRect rect = sc.rect();
  const Index dim = rect.size();

  SubspaceReport report;
  report.trials = trials;
  report.predicted_interference_rank = predict_rank(comps, rect).formula_value;
  report.projection_rank = projection_rank.value_or(report.predicted_interference_rank);

  const ProcessSpec noise = ProcessSpec::white(sc.noise_power, sc.seed);
  Eigen::MatrixXcd sample = Eigen::MatrixXcd::Zero(dim, dim);
  for (Index l = 0; l < trials; ++l) {
    const auto draw = static_cast<std::uint64_t>(l);
    ComplexField snap = synthesize_sum(comps, rect, draw);
    const Eigen::VectorXcd w = draw_complex_process(noise, dim, DrawKey{draw, kNoiseSlot});
    Eigen::VectorXcd v = snap.vectorized() + w;
    sample.noalias() += v * v.adjoint();
  }
  sample /= static_cast<double>(trials);

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(sample, Eigen::EigenvaluesOnly);
  report.eigenvalues = eig.eigenvalues().reverse();

  const Eigen::MatrixXcd proj = dominant_projection(sample, report.projection_rank);
  const Eigen::MatrixXcd interference = assemble_gamma(comps, rect).gamma();
  const double total = interference.trace().real();
  if (total > 0.0) {
    const double leaked = (proj * interference * proj.adjoint()).trace().real();
    report.residual_interference = leaked / total;
    report.suppression_db = -10.0 * std::log10(report.residual_interference);
  } else {
    report.residual_interference = 0.0;
    report.suppression_db = std::numeric_limits<double>::infinity();
  }

  if (sc.target) {
    const Eigen::VectorXcd s = steering_vector(*sc.target, rect);
    const double power = s.squaredNorm();
    report.target_retention = power > 0.0 ? (proj * s).squaredNorm() / power : 1.0;
  }
  return report;
}

}  // namespace evanescent::stap
