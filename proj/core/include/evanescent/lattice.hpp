#pragma once

// Integer lattice machinery: slope pairs, rational half-plane orders and the
// Diophantine shift families that tie lattice points to a shared sample of a
// component's modulating process.

#include <cstdint>
#include <vector>

namespace evanescent {

using Index = std::int64_t;

// Upper bound on |a|, |b|, N and M. Keeps every product n*a + m*b and
// n*c + m*d comfortably inside 64 bits.
inline constexpr Index kMaxLatticeParameter = Index{1} << 24;

struct LatticePoint {
  Index n = 0;
  Index m = 0;

  friend bool operator==(const LatticePoint&, const LatticePoint&) = default;
  friend auto operator<=>(const LatticePoint&, const LatticePoint&) = default;
};

/// Coprime spectral-support pair (a, b) with its companion (c, d).
///
/// The companion is fixed to the canonical representative: c = 0, d = 1 for
/// a = 1; the unique 0 <= c < a solving a*d - b*c = 1 for a > 1. The pair
/// (0, 1) keeps the conventional companion (1, 0), for which a*d - b*c = -1;
/// orientation() exposes that sign wherever phases depend on it.
class SlopePair {
 public:
  /// Throws std::invalid_argument for non-coprime pairs, a < 0, or (0, b != 1).
  static SlopePair make(Index a, Index b);

  /// Same slope with an explicit companion. Requires a*d - b*c = orientation
  /// of the canonical pair; used to check invariance to the representative.
  static SlopePair with_companion(Index a, Index b, Index c, Index d);

  Index a() const noexcept { return a_; }
  Index b() const noexcept { return b_; }
  Index c() const noexcept { return c_; }
  Index d() const noexcept { return d_; }

  /// a*d - b*c: +1 for every pair except the vertical (0, 1) convention.
  Index orientation() const noexcept { return a_ * d_ - b_ * c_; }

  /// Modulating-process index ("column") k = n*a + m*b.
  Index process_index(LatticePoint p) const noexcept { return p.n * a_ + p.m * b_; }

  /// Phase coordinate ("row") n*c + m*d.
  Index phase_index(LatticePoint p) const noexcept { return p.n * c_ + p.m * d_; }

  /// Lattice displacement of one unit Diophantine shift: (b, -a).
  LatticePoint shift(Index t) const noexcept { return {t * b_, -t * a_}; }

  friend bool operator==(const SlopePair&, const SlopePair&) = default;

 private:
  SlopePair(Index a, Index b, Index c, Index d) : a_(a), b_(b), c_(c), d_(d) {}

  Index a_;
  Index b_;
  Index c_;
  Index d_;
};

/// N x M sample rectangle D = {0..N-1} x {0..M-1}. Points are vectorized
/// row-major: index(n, m) = n*M + m.
class LatticeRect {
 public:
  /// Throws std::invalid_argument unless 1 <= rows, cols <= kMaxLatticeParameter.
  LatticeRect(Index rows, Index cols);

  Index rows() const noexcept { return rows_; }
  Index cols() const noexcept { return cols_; }
  Index size() const noexcept { return rows_ * cols_; }

  bool contains(LatticePoint p) const noexcept {
    return p.n >= 0 && p.n < rows_ && p.m >= 0 && p.m < cols_;
  }

  Index index(LatticePoint p) const noexcept { return p.n * cols_ + p.m; }
  LatticePoint point(Index idx) const noexcept { return {idx / cols_, idx % cols_}; }

  friend bool operator==(const LatticeRect&, const LatticeRect&) = default;

 private:
  Index rows_;
  Index cols_;
};

/// Non-negative gcd; gcd(0, 0) = 0.
Index gcd(Index x, Index y) noexcept;

/// True iff p1 - p2 lies in the half-plane past of the order induced by s:
/// k*a + l*b < 0, or k*a + l*b = 0 with the tie broken along the boundary line.
bool rnshp_precedes(LatticePoint p1, LatticePoint p2, const SlopePair& s) noexcept;

/// Every t with (n + t*b, m - t*a) inside rect, ascending. Always contains 0.
/// Throws std::out_of_range if point is outside rect.
std::vector<Index> diophantine_shifts(LatticePoint point, const SlopePair& s,
                                      const LatticeRect& rect);

}  // namespace evanescent
