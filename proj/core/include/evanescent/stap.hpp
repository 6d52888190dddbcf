#pragma once

// Space-time adaptive processing scenarios expressed as evanescent fields:
// jammers are vertical (0,1) components, the clutter ridge is a (1,beta)
// component, receiver noise is white.

#include <cstdint>
#include <optional>
#include <vector>

#include <Eigen/Core>

#include "evanescent/field.hpp"
#include "evanescent/lattice.hpp"

namespace evanescent::stap {

struct Jammer {
  double angle_frequency = 0.0;  // spatial phase step across antennas
  double power = 1.0;
};

struct Clutter {
  Index beta = 1;                // ridge slope; support pair (1, beta)
  double power = 1.0;
  double ridge_frequency = 0.0;  // modulation along the ridge
  ProcessKind process = ProcessKind::white;
  double ar_coefficient = 0.0;
};

struct Target {
  double angle_frequency = 0.0;
  double doppler_frequency = 0.0;
  double amplitude = 1.0;
};

/// N antennas (lattice rows, index n) by M pulses (lattice columns, index m).
struct Scenario {
  Index antennas = 1;
  Index pulses = 1;
  std::vector<Jammer> jammers;
  std::optional<Clutter> clutter;
  double noise_power = 1.0;
  std::optional<Target> target;
  std::uint64_t seed = 0;

  LatticeRect rect() const { return LatticeRect(antennas, pulses); }

  /// Throws std::invalid_argument on duplicate jammer frequencies,
  /// noise_power <= 0, non-positive powers or beta < 1.
  void validate() const;
};

std::vector<EvanescentComponent> scenario_to_components(const Scenario& sc);

/// Noise-free interference covariance (jammers + clutter).
Eigen::MatrixXcd interference_only_covariance(const Scenario& sc);

/// Interference plus noise_power * I.
Eigen::MatrixXcd interference_covariance(const Scenario& sc);

/// I - U_r U_r^H with U_r the eigenvectors of the r largest eigenvalues.
/// Throws std::out_of_range unless 0 <= r <= dim.
Eigen::MatrixXcd dominant_projection(const Eigen::MatrixXcd& cov, Index r);

/// Space-time steering vector exp(j(angle*n + doppler*m)), scaled by amplitude.
Eigen::VectorXcd steering_vector(const Target& target, const LatticeRect& rect);

struct SubspaceReport {
  Index predicted_interference_rank = 0;
  Index projection_rank = 0;
  Index trials = 0;
  Eigen::VectorXd eigenvalues;       // sample covariance, descending
  double residual_interference = 0;  // tr(P G P) / tr(G) with the exact interference G
  double suppression_db = 0;         // -10 log10(residual_interference)
  std::optional<double> target_retention;  // ||P s||^2 / ||s||^2
};

/// Draws `trials` interference-plus-noise snapshots, projects out the
/// dominant subspace of their sample covariance and measures how much exact
/// interference power survives. The projection rank defaults to the
/// predicted interference rank. Deterministic per scenario seed.
SubspaceReport suppression_experiment(const Scenario& sc, Index trials,
                                      std::optional<Index> projection_rank = std::nullopt);

}  // namespace evanescent::stap
