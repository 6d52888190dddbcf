#include "evanescent/lattice.hpp"

#include <algorithm>
#include <cstdlib>
#include <stdexcept>
#include <string>

namespace evanescent {

namespace {

void check_magnitude(Index v, const char* what) {
  if (v > kMaxLatticeParameter || v < -kMaxLatticeParameter) {
    throw std::invalid_argument(std::string(what) + " exceeds the supported lattice range");
  }
}

// Floor division for possibly negative numerators.
Index floor_div(Index num, Index den) {
  Index q = num / den;
  if ((num % den != 0) && ((num < 0) != (den < 0))) --q;
  return q;
}

Index ceil_div(Index num, Index den) { return -floor_div(-num, den); }

// Modular inverse of x modulo mod (mod > 1, gcd(x, mod) = 1).
Index mod_inverse(Index x, Index mod) {
  Index r0 = ((x % mod) + mod) % mod;
  Index r1 = mod;
  Index s0 = 1;
  Index s1 = 0;
  while (r1 != 0) {
    const Index q = r0 / r1;
    Index tmp = r0 - q * r1;
    r0 = r1;
    r1 = tmp;
    tmp = s0 - q * s1;
    s0 = s1;
    s1 = tmp;
  }
  return ((s0 % mod) + mod) % mod;
}

}  // namespace

Index gcd(Index x, Index y) noexcept {
  x = x < 0 ? -x : x;
  y = y < 0 ? -y : y;
  while (y != 0) {
    const Index r = x % y;
    x = y;
    y = r;
  }
  return x;
}

SlopePair SlopePair::make(Index a, Index b) {
  check_magnitude(a, "slope parameter a");
  check_magnitude(b, "slope parameter b");
  if (a < 0) throw std::invalid_argument("slope parameter a must be non-negative");
  if (a == 0 && b == 0) throw std::invalid_argument("slope pair (0,0) is not allowed");
  if (a == 0 && b != 1) throw std::invalid_argument("vertical slope must be written (0,1)");
  if (gcd(a, b) != 1) throw std::invalid_argument("slope parameters must be coprime");

  if (a == 0) return SlopePair(0, 1, 1, 0);
  if (a == 1) return SlopePair(1, b, 0, 1);

  // b*c = -1 (mod a)  =>  c = -b^{-1} mod a, then d = (1 + b*c) / a.
  const Index inv_b = mod_inverse(b, a);
  const Index c = (a - inv_b) % a;
  const Index d = (1 + b * c) / a;
  return SlopePair(a, b, c, d);
}

SlopePair SlopePair::with_companion(Index a, Index b, Index c, Index d) {
  const SlopePair canonical = make(a, b);
  check_magnitude(c, "companion c");
  check_magnitude(d, "companion d");
  if (a * d - b * c != canonical.orientation()) {
    throw std::invalid_argument("companion (c,d) does not satisfy the Bezout identity");
  }
  return SlopePair(a, b, c, d);
}

LatticeRect::LatticeRect(Index rows, Index cols) : rows_(rows), cols_(cols) {
  if (rows < 1 || cols < 1) throw std::invalid_argument("lattice dimensions must be positive");
  check_magnitude(rows, "lattice rows");
  check_magnitude(cols, "lattice cols");
}

bool rnshp_precedes(LatticePoint p1, LatticePoint p2, const SlopePair& s) noexcept {
  const Index k = p1.n - p2.n;
  const Index l = p1.m - p2.m;
  const Index level = k * s.a() + l * s.b();
  if (level != 0) return level < 0;
  // On the boundary line the displacement is a multiple of (b, -a). For a > 0
  // the m coordinate orders it; for the vertical order (a = 0) m is constant
  // along the line and n takes over.
  if (s.a() > 0) return l <= 0;
  return k <= 0;
}

std::vector<Index> diophantine_shifts(LatticePoint point, const SlopePair& s,
                                      const LatticeRect& rect) {
  if (!rect.contains(point)) throw std::out_of_range("lattice point outside the sample rectangle");

  // Intersect 0 <= n + t*b <= N-1 and 0 <= m - t*a <= M-1.
  Index lo = -kMaxLatticeParameter * 4;
  Index hi = kMaxLatticeParameter * 4;
  auto constrain = [&](Index base, Index step, Index upper) {
    // 0 <= base + t*step <= upper
    if (step == 0) return;
    if (step > 0) {
      lo = std::max(lo, ceil_div(-base, step));
      hi = std::min(hi, floor_div(upper - base, step));
    } else {
      lo = std::max(lo, ceil_div(upper - base, step));
      hi = std::min(hi, floor_div(-base, step));
    }
  };
  constrain(point.n, s.b(), rect.rows() - 1);
  constrain(point.m, -s.a(), rect.cols() - 1);

  std::vector<Index> out;
  if (hi >= lo) {
    out.reserve(static_cast<std::size_t>(hi - lo + 1));
    for (Index t = lo; t <= hi; ++t) out.push_back(t);
  }
  return out;
}

}  // namespace evanescent
