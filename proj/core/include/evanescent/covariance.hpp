#pragma once

// Exact covariance of a sum of evanescent components, kept in factored form
// alongside the assembled matrix.

#include <span>
#include <vector>

#include <Eigen/Core>

#include "evanescent/field.hpp"
#include "evanescent/lattice.hpp"

namespace evanescent {

/// 0/1 matrix with one nonzero per column: column [n,m] selects process
/// sample k = n*a + m*b, stored at row k - k_min. Unused rows stay zero so
/// that row index and process index remain aligned.
class SelectionMatrix {
 public:
  SelectionMatrix(const SlopePair& slope, const LatticeRect& rect);

  Index rows() const noexcept { return range_.length(); }
  Index cols() const noexcept { return static_cast<Index>(row_of_column_.size()); }
  const ProcessIndexRange& range() const noexcept { return range_; }

  /// Row holding the single 1 in the given column.
  Index row_of(Index column) const { return row_of_column_[static_cast<std::size_t>(column)]; }
  std::span<const Index> row_of_column() const noexcept { return row_of_column_; }

  /// Number of distinct columns, i.e. distinct process samples observed.
  Index distinct_columns() const;

  /// Replica count per row (diagonal of A A^T).
  Eigen::VectorXi row_counts() const;

  Eigen::MatrixXd dense() const;

 private:
  ProcessIndexRange range_;
  std::vector<Index> row_of_column_;
};

SelectionMatrix build_selection(const SlopePair& slope, const LatticeRect& rect);

/// Diagonal of D = diag(exp(-j*omega*v)), v[n*M+m] = n*c + m*d.
Eigen::VectorXcd build_modulation(const EvanescentComponent& comp, const LatticeRect& rect);

/// Covariance of consecutive process samples: variance * I for white noise,
/// Toeplitz variance * ar^|i-j| / (1 - ar^2) for AR(1).
Eigen::MatrixXd process_covariance(const ProcessSpec& spec, Index size);

enum class FieldKind { complex_valued, real_valued };

struct ComponentFactors {
  SelectionMatrix selection;
  Eigen::VectorXcd modulation;
  Eigen::MatrixXd process_cov;
};

/// Exact covariance model. For complex fields Gamma = C^H R C with
/// C = [A_1 D_1; ...; A_Q D_Q] and R = blockdiag(R_q). For real fields each
/// component contributes two blocks, A_q cos(omega v) and A_q sin(omega v),
/// both weighted by R_q.
class CovarianceModel {
 public:
  const LatticeRect& rect() const noexcept { return rect_; }
  FieldKind kind() const noexcept { return kind_; }
  std::span<const EvanescentComponent> components() const noexcept { return components_; }
  std::span<const ComponentFactors> factors() const noexcept { return factors_; }

  /// NM x NM Hermitian (real symmetric in real mode, stored complex).
  const Eigen::MatrixXcd& gamma() const noexcept { return gamma_; }

  /// Stacked coefficient matrix; Gamma = C^H R C. Column i belongs to the
  /// lattice point rect().point(i).
  Eigen::MatrixXcd stacked_coefficients() const;

  /// blockdiag of the process covariances matching stacked_coefficients().
  Eigen::MatrixXd block_process_covariance() const;

  /// Row offset of each block inside stacked_coefficients().
  std::vector<Index> block_offsets() const;

  friend CovarianceModel assemble_gamma(std::span<const EvanescentComponent> comps,
                                        const LatticeRect& rect, FieldKind kind);

 private:
  CovarianceModel(const LatticeRect& rect, FieldKind kind) : rect_(rect), kind_(kind) {}

  LatticeRect rect_;
  FieldKind kind_;
  std::vector<EvanescentComponent> components_;
  std::vector<ComponentFactors> factors_;
  Eigen::MatrixXcd gamma_;
};

/// Largest lattice (N*M) the dense builders accept.
inline constexpr Index kMaxDenseDimension = 4096;

/// Assembles Gamma entrywise from the factors:
/// Gamma[i,j] = sum_q conj(D_q[i]) R_q[k_q(i), k_q(j)] D_q[j] (complex), or
/// the cos/sin analogue (real). Throws std::invalid_argument on duplicate
/// triples or if N*M exceeds kMaxDenseDimension.
CovarianceModel assemble_gamma(std::span<const EvanescentComponent> comps, const LatticeRect& rect,
                               FieldKind kind = FieldKind::complex_valued);

/// (1/L) sum_l e_l e_l^H. Throws std::invalid_argument on an empty list or
/// mismatched lattices.
Eigen::MatrixXcd sample_covariance(std::span<const ComplexField> snapshots);
Eigen::MatrixXd sample_covariance(std::span<const RealField> snapshots);

/// Relative Frobenius gap ||Gamma - C^H R C|| / ||Gamma|| (0 for a zero Gamma).
double factorization_residual(const CovarianceModel& model);

}  // namespace evanescent
