#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "evanescent/field.hpp"
#include "oracles.hpp"

using namespace evanescent;

namespace {

constexpr double kPi = std::numbers::pi;

EvanescentComponent make(Index a, Index b, double omega, ProcessSpec spec = ProcessSpec::white(1.0, 7)) {
  return EvanescentComponent(SlopePair::make(a, b), omega, spec);
}

}  // namespace

TEST(ModulatingIndices, NegativeSlopeRange) {
  const auto r = modulating_indices(SlopePair::make(3, -2), LatticeRect(15, 15));
  EXPECT_EQ(r.k_min, -28);
  EXPECT_EQ(r.k_max, 42);
  EXPECT_EQ(r.length(), 71);
}

TEST(ModulatingIndices, AxisOrders) {
  const auto v = modulating_indices(SlopePair::make(0, 1), LatticeRect(4, 4));
  EXPECT_EQ(v.k_min, 0);
  EXPECT_EQ(v.k_max, 3);
  const auto h = modulating_indices(SlopePair::make(1, 0), LatticeRect(6, 4));
  EXPECT_EQ(h.k_min, 0);
  EXPECT_EQ(h.length(), 6);
}

TEST(ModulatingIndices, LengthFormula) {
  for (Index a = 0; a <= 4; ++a) {
    for (Index b = -4; b <= 4; ++b) {
      if ((a == 0 && b != 1) || gcd(a, b) != 1) continue;
      const LatticeRect rect(5, 7);
      const auto r = modulating_indices(SlopePair::make(a, b), rect);
      EXPECT_EQ(r.length(), 4 * a + 6 * std::abs(b) + 1);
    }
  }
}

TEST(ProcessSpec, Validation) {
  EXPECT_THROW(ProcessSpec::white(0.0), std::invalid_argument);
  EXPECT_THROW(ProcessSpec::ar1(1.0, 1.0), std::invalid_argument);
  EXPECT_THROW(ProcessSpec::ar1(1.0, -1.2), std::invalid_argument);
  EXPECT_NO_THROW(ProcessSpec::ar1(1.0, -0.9));
}

TEST(SynthesizeComponent, ZeroFrequencyVerticalReplicatesRows) {
  const LatticeRect rect(5, 4);
  const auto f = synthesize_component(make(0, 1, 0.0), rect);
  for (Index n = 1; n < rect.rows(); ++n) {
    for (Index m = 0; m < rect.cols(); ++m) EXPECT_EQ(f(n, m), f(0, m));
  }
}

TEST(SynthesizeComponent, VerticalOrderRowPhase) {
  const LatticeRect rect(6, 3);
  const double omega = 1.234;
  const auto f = synthesize_component(make(0, 1, omega), rect);
  for (Index n = 0; n < rect.rows(); ++n) {
    for (Index m = 0; m < rect.cols(); ++m) {
      const Complex expected = f(0, m) * std::polar(1.0, omega * static_cast<double>(n));
      EXPECT_NEAR(std::abs(f(n, m) - expected), 0.0, 1e-12 * std::abs(f(0, m)));
    }
  }
}

TEST(SynthesizeComponent, DiagonalOrderConstantOnAntiDiagonals) {
  const LatticeRect rect(6, 6);
  const auto f = synthesize_component(make(1, 1, 0.0, ProcessSpec::ar1(1.0, 0.4, 3)), rect);
  for (Index n = 0; n < rect.rows(); ++n) {
    for (Index m = 0; m < rect.cols(); ++m) {
      if (n + 1 < rect.rows() && m >= 1) EXPECT_EQ(f(n + 1, m - 1), f(n, m));
    }
  }
}

TEST(SynthesizeComponent, VectorizationMatchesGrid) {
  const LatticeRect rect(3, 4);
  const auto f = synthesize_component(make(2, 1, 0.3), rect);
  const auto v = f.vectorized();
  for (Index n = 0; n < 3; ++n) {
    for (Index m = 0; m < 4; ++m) EXPECT_EQ(v[n * 4 + m], f(n, m));
  }
}

TEST(SynthesizeComponent, ReplicationLawAlongDiophantineShifts) {
  const LatticeRect rect(9, 8);
  for (auto [a, b] : std::vector<std::pair<Index, Index>>{{0, 1}, {1, 0}, {1, 1}, {3, 2}, {3, -2}, {2, -1}}) {
    const auto comp = make(a, b, 2.1, ProcessSpec::ar1(1.0, 0.6, 11));
    const auto f = synthesize_component(comp, rect);
    const double eps = static_cast<double>(comp.slope.orientation());
    for (Index i = 0; i < rect.size(); ++i) {
      const auto p = rect.point(i);
      for (Index t : diophantine_shifts(p, comp.slope, rect)) {
        const auto q = LatticePoint{p.n + t * b, p.m - t * a};
        const Complex expected = f(p.n, p.m) * std::polar(1.0, -eps * comp.omega * static_cast<double>(t));
        ASSERT_LE(std::abs(f(q.n, q.m) - expected), 1e-12 * std::abs(f(p.n, p.m))) << a << "," << b;
      }
    }
  }
}

TEST(SynthesizeComponent, SeededDeterminism) {
  const LatticeRect rect(7, 5);
  const auto comp = make(3, 2, 0.5, ProcessSpec::ar1(2.0, -0.3, 99));
  const auto f1 = synthesize_component(comp, rect, {4, 1});
  const auto f2 = synthesize_component(comp, rect, {4, 1});
  EXPECT_TRUE(f1.values() == f2.values());
  const auto f3 = synthesize_component(comp, rect, {5, 1});
  EXPECT_FALSE(f1.values() == f3.values());
}

TEST(SynthesizeRealComponent, ZeroFrequencyIsCosineBranchOnly) {
  const LatticeRect rect(4, 5);
  const auto comp = make(1, 2, 0.0, ProcessSpec::white(1.0, 5));
  const auto f = synthesize_real_component(comp, rect);
  const auto range = modulating_indices(comp.slope, rect);
  const auto s = draw_real_process(comp.process, range.length(), {}, 0);
  for (Index n = 0; n < 4; ++n) {
    for (Index m = 0; m < 5; ++m) EXPECT_EQ(f(n, m), s[n + 2 * m - range.k_min]);
  }
}

TEST(SynthesizeRealComponent, QuarterTurnSelectsSineBranch) {
  const LatticeRect rect(2, 6);
  const auto comp = make(0, 1, kPi / 2.0, ProcessSpec::white(1.0, 8));
  const auto f = synthesize_real_component(comp, rect);
  const auto s = draw_real_process(comp.process, 6, {}, 0);
  const auto t = draw_real_process(comp.process, 6, {}, 1);
  for (Index m = 0; m < 6; ++m) {
    EXPECT_EQ(f(0, m), s[m]);
    EXPECT_NEAR(f(1, m), t[m], 1e-15 * (1.0 + std::abs(s[m])));
  }
}

TEST(SynthesizeRealComponent, ZeroMeanWithinMonteCarloBand) {
  const LatticeRect rect(3, 3);
  const auto comp = make(1, 1, 0.8, ProcessSpec::white(1.0, 21));
  const int trials = 4000;
  Eigen::MatrixXd sum = Eigen::MatrixXd::Zero(3, 3);
  for (int l = 0; l < trials; ++l) sum += synthesize_real_component(comp, rect, {static_cast<std::uint64_t>(l), 0}).values();
  // Each entry has variance cos^2 + sin^2 = 1.
  const double band = 3.0 / std::sqrt(static_cast<double>(trials));
  EXPECT_LE((sum / trials).cwiseAbs().maxCoeff(), band * 1.5);
}

TEST(SynthesizeSum, EmptySingletonAndPair) {
  const LatticeRect rect(4, 4);
  std::vector<EvanescentComponent> none;
  EXPECT_EQ(synthesize_sum(none, rect).values().norm(), 0.0);

  std::vector<EvanescentComponent> one{make(1, 2, 0.4)};
  EXPECT_TRUE(synthesize_sum(one, rect).values() == synthesize_component(one[0], rect).values());

  std::vector<EvanescentComponent> two{make(1, 2, 0.4), make(0, 1, 1.0)};
  const auto total = synthesize_sum(two, rect, 3);
  const Eigen::MatrixXcd expected = synthesize_component(two[0], rect, {3, 0}).values() +
                        synthesize_component(two[1], rect, {3, 1}).values();
  EXPECT_TRUE(total.values() == expected);
}

TEST(SynthesizeSum, RejectsDuplicateTriples) {
  const LatticeRect rect(4, 4);
  std::vector<EvanescentComponent> dup{make(1, 2, 0.4), make(1, 2, 0.4 + 2.0 * kPi)};
  EXPECT_THROW(synthesize_sum(dup, rect), std::invalid_argument);
  std::vector<EvanescentComponent> ok{make(1, 2, 0.4), make(1, 2, 0.5)};
  EXPECT_NO_THROW(synthesize_sum(ok, rect));
}

TEST(ModulatingProcess, Ar1AutocovarianceConverges) {
  const auto spec = ProcessSpec::ar1(0.75, 0.5, 17);
  const Index len = 64;
  const int trials = 3000;
  std::vector<oracle::ComplexMoments> lag(4);
  for (int l = 0; l < trials; ++l) {
    const auto s = draw_complex_process(spec, len, {static_cast<std::uint64_t>(l), 0});
    for (int h = 0; h < 4; ++h) {
      for (Index k = 0; k + h < len; k += 8) lag[h].add(s[k + h] * std::conj(s[k]));
    }
  }
  for (int h = 0; h < 4; ++h) {
    const double model = 0.75 * std::pow(0.5, h) / (1.0 - 0.25);
    EXPECT_NEAR(lag[h].mean().real(), model, 5.0 * lag[h].se_re()) << "lag " << h;
    EXPECT_NEAR(lag[h].mean().imag(), 0.0, 5.0 * lag[h].se_im()) << "lag " << h;
  }
}
