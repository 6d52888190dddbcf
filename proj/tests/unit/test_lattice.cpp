#include <gtest/gtest.h>

#include <algorithm>
#include <stdexcept>
#include <vector>

#include "evanescent/lattice.hpp"
#include "oracles.hpp"

using namespace evanescent;

namespace {

std::vector<SlopePair> small_slopes(Index limit) {
  std::vector<SlopePair> out;
  for (Index a = 0; a <= limit; ++a) {
    for (Index b = -limit; b <= limit; ++b) {
      if ((a == 0 && b != 1) || gcd(a, b) != 1) continue;
      out.push_back(SlopePair::make(a, b));
    }
  }
  return out;
}

}  // namespace

TEST(SlopePair, CanonicalCompanionsForAxisOrders) {
  const auto vertical = SlopePair::make(0, 1);
  EXPECT_EQ(vertical.c(), 1);
  EXPECT_EQ(vertical.d(), 0);

  const auto horizontal = SlopePair::make(1, 0);
  EXPECT_EQ(horizontal.c(), 0);
  EXPECT_EQ(horizontal.d(), 1);
}

TEST(SlopePair, CanonicalCompanionForThreeTwo) {
  const auto s = SlopePair::make(3, 2);
  EXPECT_EQ(s.c(), 1);
  EXPECT_EQ(s.d(), 1);
  EXPECT_EQ(s.a() * s.d() - s.b() * s.c(), 1);
}

TEST(SlopePair, BezoutIdentityOnAllSmallPairs) {
  for (const auto& s : small_slopes(25)) {
    const Index det = s.a() * s.d() - s.b() * s.c();
    if (s.a() == 0) {
      // (0,1) keeps the conventional companion (1,0).
      EXPECT_EQ(det, -1);
    } else {
      EXPECT_EQ(det, 1) << s.a() << "," << s.b();
      if (s.a() > 1) {
        EXPECT_GE(s.c(), 0);
        EXPECT_LT(s.c(), s.a());
      }
    }
    EXPECT_EQ(det, s.orientation());
  }
}

TEST(SlopePair, RejectsInvalidPairs) {
  EXPECT_THROW(SlopePair::make(2, 4), std::invalid_argument);
  EXPECT_THROW(SlopePair::make(-1, 2), std::invalid_argument);
  EXPECT_THROW(SlopePair::make(0, 0), std::invalid_argument);
  EXPECT_THROW(SlopePair::make(0, -1), std::invalid_argument);
  EXPECT_THROW(SlopePair::make(0, 3), std::invalid_argument);
  EXPECT_THROW(SlopePair::make(kMaxLatticeParameter + 1, 1), std::invalid_argument);
}

TEST(SlopePair, AlternateCompanionMustSatisfyIdentity) {
  const auto alt = SlopePair::with_companion(3, 2, 4, 3);  // (c,d) + (a,b)
  EXPECT_EQ(alt.orientation(), 1);
  EXPECT_THROW(SlopePair::with_companion(3, 2, 1, 2), std::invalid_argument);
}

TEST(LatticeRect, VectorizationIsRowMajor) {
  const LatticeRect rect(3, 5);
  EXPECT_EQ(rect.size(), 15);
  EXPECT_EQ(rect.index({1, 2}), 7);
  EXPECT_EQ(rect.point(7), (LatticePoint{1, 2}));
  EXPECT_THROW(LatticeRect(0, 3), std::invalid_argument);
}

TEST(RnshpOrder, ExamplesFromLexicographicOrder) {
  const auto s = SlopePair::make(0, 1);
  EXPECT_TRUE(rnshp_precedes({0, -1}, {0, 0}, s));
  EXPECT_FALSE(rnshp_precedes({0, 0}, {0, -1}, s));
  EXPECT_TRUE(rnshp_precedes({0, 0}, {0, 0}, s));
}

TEST(RnshpOrder, IsATotalOrderOnSmallLattices) {
  std::vector<LatticePoint> pts;
  for (Index n = 0; n < 7; ++n) {
    for (Index m = 0; m < 7; ++m) pts.push_back({n, m});
  }
  for (const auto& s : small_slopes(3)) {
    for (const auto& p : pts) {
      for (const auto& q : pts) {
        if (p == q) continue;
        const bool pq = rnshp_precedes(p, q, s);
        const bool qp = rnshp_precedes(q, p, s);
        ASSERT_NE(pq, qp) << "slope " << s.a() << "," << s.b();
      }
    }
    // Transitivity on a subsample of triples.
    for (std::size_t i = 0; i < pts.size(); i += 3) {
      for (std::size_t j = 1; j < pts.size(); j += 4) {
        for (std::size_t k = 2; k < pts.size(); k += 5) {
          if (rnshp_precedes(pts[i], pts[j], s) && rnshp_precedes(pts[j], pts[k], s)) {
            ASSERT_TRUE(rnshp_precedes(pts[i], pts[k], s));
          }
        }
      }
    }
  }
}

TEST(DiophantineShifts, VerticalOrderMovesAlongRows) {
  const LatticeRect rect(4, 4);
  const auto ts = diophantine_shifts({0, 0}, SlopePair::make(0, 1), rect);
  EXPECT_EQ(ts, (std::vector<Index>{0, 1, 2, 3}));
}

TEST(DiophantineShifts, HorizontalOrderMovesAlongColumns) {
  const LatticeRect rect(5, 6);
  const auto ts = diophantine_shifts({2, 4}, SlopePair::make(1, 0), rect);
  for (Index t : ts) {
    EXPECT_GE(4 - t, 0);
    EXPECT_LT(4 - t, 6);
  }
  EXPECT_EQ(ts.size(), 6u);
}

TEST(DiophantineShifts, MatchesBruteForceAndPreservesIndex) {
  for (Index rows : {1, 3, 7}) {
    for (Index cols : {1, 4, 6}) {
      const LatticeRect rect(rows, cols);
      for (const auto& s : small_slopes(3)) {
        for (Index n = 0; n < rows; ++n) {
          for (Index m = 0; m < cols; ++m) {
            const auto ts = diophantine_shifts({n, m}, s, rect);
            EXPECT_EQ(ts, oracle::brute_shifts(n, m, s.a(), s.b(), rows, cols));
            EXPECT_TRUE(std::find(ts.begin(), ts.end(), 0) != ts.end());
            for (Index t : ts) {
              EXPECT_EQ(s.process_index({n + t * s.b(), m - t * s.a()}), s.process_index({n, m}));
            }
          }
        }
      }
    }
  }
}

TEST(DiophantineShifts, SameProcessIndexIffShifted) {
  const LatticeRect rect(6, 5);
  for (const auto& s : small_slopes(3)) {
    for (Index i = 0; i < rect.size(); ++i) {
      const auto p = rect.point(i);
      const auto ts = diophantine_shifts(p, s, rect);
      for (Index j = 0; j < rect.size(); ++j) {
        const auto q = rect.point(j);
        const bool same = s.process_index(p) == s.process_index(q);
        const bool reachable = std::any_of(ts.begin(), ts.end(), [&](Index t) {
          return LatticePoint{p.n + t * s.b(), p.m - t * s.a()} == q;
        });
        ASSERT_EQ(same, reachable);
      }
    }
  }
}

TEST(DiophantineShifts, RejectsPointOutsideRect) {
  EXPECT_THROW(diophantine_shifts({4, 0}, SlopePair::make(1, 1), LatticeRect(4, 4)), std::out_of_range);
}
