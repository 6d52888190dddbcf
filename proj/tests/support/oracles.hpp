#pragma once

// Test-only brute-force oracles. Nothing here calls into the library's
// lattice or covariance code paths.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <set>
#include <vector>

namespace oracle {

using i64 = std::int64_t;

// All t with (n + t*b, m - t*a) in [0,N) x [0,M), by scanning a wide window.
inline std::vector<i64> brute_shifts(i64 n, i64 m, i64 a, i64 b, i64 rows, i64 cols) {
  std::vector<i64> out;
  const i64 window = rows + cols + 2;
  for (i64 t = -window; t <= window; ++t) {
    const i64 nn = n + t * b;
    const i64 mm = m - t * a;
    if (nn >= 0 && nn < rows && mm >= 0 && mm < cols) out.push_back(t);
  }
  return out;
}

// Number of distinct k = n*a + m*b over the rectangle.
inline i64 brute_distinct_indices(i64 a, i64 b, i64 rows, i64 cols) {
  std::set<i64> ks;
  for (i64 n = 0; n < rows; ++n) {
    for (i64 m = 0; m < cols; ++m) ks.insert(n * a + m * b);
  }
  return static_cast<i64>(ks.size());
}

// Closed-form evaluation of the rank formula, kept separate from the library.
inline i64 rank_formula(i64 rows, i64 cols, i64 sum_a, i64 sum_b) {
  const i64 raw = rows * sum_a + cols * sum_b - sum_a * sum_b;
  return raw < rows * cols ? raw : rows * cols;
}

// Streaming mean / standard-error accumulator for complex samples.
struct ComplexMoments {
  std::complex<double> sum{0.0, 0.0};
  double sum_sq_re = 0.0;
  double sum_sq_im = 0.0;
  std::int64_t count = 0;

  void add(std::complex<double> z) {
    sum += z;
    sum_sq_re += z.real() * z.real();
    sum_sq_im += z.imag() * z.imag();
    ++count;
  }
  std::complex<double> mean() const { return sum / static_cast<double>(count); }
  double se_re() const {
    const double mu = mean().real();
    const double var = sum_sq_re / count - mu * mu;
    return std::sqrt(std::max(var, 0.0) / count);
  }
  double se_im() const {
    const double mu = mean().imag();
    const double var = sum_sq_im / count - mu * mu;
    return std::sqrt(std::max(var, 0.0) / count);
  }
};

}  // namespace oracle
