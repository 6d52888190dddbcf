#pragma once

// Evanescent component parameters and finite-sample synthesis.

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "evanescent/lattice.hpp"

namespace evanescent {

using Complex = std::complex<double>;

enum class ProcessKind { white, ar1 };

/// 1-D modulating process model. For ar1, `variance` is the innovation
/// variance, so the stationary variance is variance / (1 - ar^2).
struct ProcessSpec {
  ProcessKind kind = ProcessKind::white;
  double variance = 1.0;
  double ar_coefficient = 0.0;
  std::uint64_t seed = 0;

  static ProcessSpec white(double variance, std::uint64_t seed = 0);
  static ProcessSpec ar1(double variance, double ar, std::uint64_t seed = 0);

  /// Throws std::invalid_argument on variance <= 0 or |ar| >= 1.
  void validate() const;

  /// Autocovariance at integer lag.
  double autocovariance(Index lag) const;
};

struct EvanescentComponent {
  SlopePair slope;
  double omega = 0.0;  // stored reduced to [0, 2*pi)
  ProcessSpec process;

  EvanescentComponent(SlopePair slope, double omega, ProcessSpec process);
};

/// Reduce an angle to [0, 2*pi).
double wrap_angle(double omega) noexcept;

/// Throws std::invalid_argument if two components share (a, b, omega).
void check_distinct_triples(std::span<const EvanescentComponent> comps);

/// Inclusive range of modulating-process indices k = n*a + m*b touched by rect.
struct ProcessIndexRange {
  Index k_min = 0;
  Index k_max = 0;
  Index length() const noexcept { return k_max - k_min + 1; }
};

ProcessIndexRange modulating_indices(const SlopePair& slope, const LatticeRect& rect) noexcept;

/// N x M lattice sample. Storage is row-major, so the vectorization
/// e[n*M + m] = e(n, m) is a view of the same buffer.
template <typename Scalar>
class FieldSample {
 public:
  using Grid = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

  explicit FieldSample(const LatticeRect& rect)
      : rect_(rect), values_(Grid::Zero(rect.rows(), rect.cols())) {}

  const LatticeRect& rect() const noexcept { return rect_; }
  const Grid& values() const noexcept { return values_; }
  Grid& values() noexcept { return values_; }

  Scalar operator()(Index n, Index m) const { return values_(n, m); }
  Scalar& operator()(Index n, Index m) { return values_(n, m); }

  Eigen::Map<const Vector> vectorized() const noexcept {
    return Eigen::Map<const Vector>(values_.data(), values_.size());
  }

  FieldSample& operator+=(const FieldSample& other) {
    values_ += other.values_;
    return *this;
  }

 private:
  LatticeRect rect_;
  Grid values_;
};

using ComplexField = FieldSample<Complex>;
using RealField = FieldSample<double>;

/// Stream selector for seeded draws. `draw` distinguishes Monte Carlo
/// realizations, `slot` distinguishes components inside a sum.
struct DrawKey {
  std::uint64_t draw = 0;
  std::uint64_t slot = 0;
};

/// One realization of s(k_min..k_max): complex circular Gaussian.
Eigen::VectorXcd draw_complex_process(const ProcessSpec& spec, Index length, DrawKey key);

/// One realization of a real Gaussian process; `stream` selects the s/t pair member.
Eigen::VectorXd draw_real_process(const ProcessSpec& spec, Index length, DrawKey key,
                                  std::uint64_t stream);

/// e(n,m) = s(n*a + m*b) * exp(j*omega*(n*c + m*d)).
ComplexField synthesize_component(const EvanescentComponent& comp, const LatticeRect& rect,
                                  DrawKey key = {});

/// e(n,m) = s(k) cos(omega*(n*c + m*d)) + t(k) sin(omega*(n*c + m*d)), k = n*a + m*b.
RealField synthesize_real_component(const EvanescentComponent& comp, const LatticeRect& rect,
                                    DrawKey key = {});

/// Sum of independently drawn components; component q uses slot q.
ComplexField synthesize_sum(std::span<const EvanescentComponent> comps, const LatticeRect& rect,
                            std::uint64_t draw = 0);

RealField synthesize_real_sum(std::span<const EvanescentComponent> comps, const LatticeRect& rect,
                              std::uint64_t draw = 0);

}  // namespace evanescent
