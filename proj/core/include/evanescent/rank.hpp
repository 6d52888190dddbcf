#pragma once

// Closed-form covariance rank, the numerical-rank oracle, and explicit
// linear-dependency certificates between covariance columns.

#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include <Eigen/Core>

#include "evanescent/covariance.hpp"
#include "evanescent/field.hpp"
#include "evanescent/lattice.hpp"

namespace evanescent {

enum class Regime { interior, saturated, outside_theorem_regime };

const char* to_string(Regime regime) noexcept;

/// Thrown when an operation needs the interior regime (non-degenerate bands).
class RegimeError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

struct RankPrediction {
  Index formula_value = 0;
  /// Unclamped N*Sa + M*Sb - Sa*Sb (doubled sums for real fields).
  Index raw_value = 0;
  bool clamped = false;
  /// Distinct process samples per component: N|a| + M|b| - |ab|.
  std::vector<Index> per_component_counts;
  Regime regime = Regime::interior;
};

/// Sa = sum|a_q|, Sb = sum|b_q| (doubled for real fields). The regime is
/// outside_theorem_regime when Sa >= M or Sb >= N, and also for real fields
/// whose sine/cosine pair collapses (omega in {0, pi}, or two components of
/// one slope with omega_p = -omega_q). Throws on duplicate triples.
RankPrediction predict_rank(std::span<const EvanescentComponent> comps, const LatticeRect& rect,
                            bool real_valued = false);

/// Singular-value threshold. Default: tau = safety_factor * max(rows, cols)
/// * eps * sigma_max. When `relative` is set, tau = relative * sigma_max.
struct TolerancePolicy {
  double safety_factor = 1e3;
  std::optional<double> relative;

  double threshold(double sigma_max, Eigen::Index rows, Eigen::Index cols) const;
};

struct NumericalRank {
  Index rank = 0;
  double threshold = 0.0;
  Eigen::VectorXd singular_values;  // descending

  /// sigma_rank / sigma_{rank+1}; +inf when there is no trailing value or it
  /// is exactly zero, and for rank 0.
  double gap_ratio() const;
};

/// Rank of a Hermitian matrix from |eigenvalues| (= singular values).
/// Throws std::invalid_argument on a non-square or non-finite input.
NumericalRank numerical_rank(const Eigen::MatrixXcd& hermitian, const TolerancePolicy& policy = {});

/// Rank of an arbitrary rectangular matrix via SVD.
NumericalRank numerical_rank_general(const Eigen::MatrixXcd& matrix,
                                     const TolerancePolicy& policy = {});

struct CertificateTerm {
  LatticePoint point;
  Complex coefficient;
};

/// Inclusion-exclusion identity expressing the field sample at `target`
/// through shifted samples:
///   e(target) = sum over nonempty S of (-1)^{|S|-1} exp(j sum_{i in S} eps_i omega_i t_i)
///               * e(target + sum_{i in S} t_i (b_i, -a_i)),
/// where eps_i = a_i d_i - b_i c_i. Terms landing on the same point are merged.
struct DependencyCertificate {
  LatticePoint target;
  std::vector<Index> shifts;
  /// One entry per nonempty subset, ordered by subset size then lexicographically.
  std::vector<CertificateTerm> subset_terms;

  /// A zero shift pairs every subset with its twin of opposite sign, so the
  /// terms collapse to the target itself.
  bool trivial() const;

  /// subset_terms with equal points summed.
  std::vector<CertificateTerm> merged_terms() const;
};

/// True when every nonempty-subset shift of `target` lands inside rect.
bool shifts_admissible(LatticePoint target, std::span<const Index> shifts,
                       std::span<const EvanescentComponent> comps, const LatticeRect& rect);

/// Throws std::invalid_argument if the shift tuple is not admissible or its
/// length differs from the component count.
DependencyCertificate make_certificate(LatticePoint target, std::span<const Index> shifts,
                                       std::span<const EvanescentComponent> comps,
                                       const LatticeRect& rect);

enum class ShiftSign { positive, any };

/// First admissible tuple with every t_i nonzero, in breadth-first order over
/// the L1 norm with |t_i| <= max(N, M), or nullopt if none exists. With
/// positive shifts a certificate exists exactly on dependent_point_set();
/// signed shifts also relate independent points to dependent ones.
std::optional<DependencyCertificate> find_certificate(LatticePoint target,
                                                      std::span<const EvanescentComponent> comps,
                                                      const LatticeRect& rect,
                                                      ShiftSign sign = ShiftSign::positive);

/// Relative residual of the certificate evaluated on the columns of the
/// stacked coefficient matrix C (complex model). Because e = C^H s, the
/// column identity carries the conjugated coefficients.
double verify_certificate(const DependencyCertificate& cert, const CovarianceModel& model);

/// Same residual computed on a synthesized field sample (exact in e).
double verify_certificate(const DependencyCertificate& cert, const ComplexField& field);

/// Lattice points in D_Q: rows B- <= n <= N-1-B+, columns Sa <= m <= M-1,
/// where B+ (B-) sums b_q over positive (negative) b_q. Every point here has
/// the all-ones shift tuple admissible. Throws RegimeError outside the
/// interior regime.
std::vector<LatticePoint> dependent_point_set(std::span<const EvanescentComponent> comps,
                                              const LatticeRect& rect);

/// D \ D_Q; its size equals the predicted rank in the interior regime.
std::vector<LatticePoint> independent_point_set(std::span<const EvanescentComponent> comps,
                                                const LatticeRect& rect);

}  // namespace evanescent
