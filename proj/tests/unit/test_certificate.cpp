#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "evanescent/covariance.hpp"
#include "evanescent/rank.hpp"

using namespace evanescent;

namespace {

std::vector<EvanescentComponent> make_set(const std::vector<std::pair<Index, Index>>& slopes, double omega0 = 0.41) {
  std::vector<EvanescentComponent> comps;
  double omega = omega0;
  for (auto [a, b] : slopes) {
    comps.emplace_back(SlopePair::make(a, b), omega, ProcessSpec::ar1(1.0, 0.5, 2));
    omega += 0.97;
  }
  return comps;
}

}  // namespace

TEST(Certificate, TrivialShiftCollapsesToTarget) {
  const LatticeRect rect(6, 6);
  const auto comps = make_set({{1, 1}, {2, 1}, {0, 1}});
  const std::vector<Index> zeros(3, 0);
  const auto cert = make_certificate({2, 3}, zeros, comps, rect);
  EXPECT_TRUE(cert.trivial());
  EXPECT_EQ(cert.subset_terms.size(), 7u);
  const auto merged = cert.merged_terms();
  ASSERT_EQ(merged.size(), 1u);
  EXPECT_EQ(merged[0].point, (LatticePoint{2, 3}));
  EXPECT_EQ(merged[0].coefficient, Complex(1.0, 0.0));
  EXPECT_EQ(verify_certificate(cert, assemble_gamma(comps, rect)), 0.0);
}

TEST(Certificate, AnyZeroShiftCollapses) {
  const LatticeRect rect(15, 15);
  const auto comps = make_set({{3, 2}, {2, 1}, {1, 3}});
  const std::vector<Index> shifts{1, 0, 1};
  const auto cert = make_certificate({5, 9}, shifts, comps, rect);
  EXPECT_TRUE(cert.trivial());
  std::vector<CertificateTerm> live;
  for (const auto& t : cert.merged_terms()) {
    if (std::abs(t.coefficient) > 1e-12) live.push_back(t);
  }
  ASSERT_EQ(live.size(), 1u);
  EXPECT_EQ(live[0].point, (LatticePoint{5, 9}));
}

TEST(Certificate, TwoComponentStructure) {
  const LatticeRect rect(15, 15);
  const auto comps = make_set({{3, 2}, {2, 1}});
  const std::vector<Index> ones{1, 1};
  const auto cert = make_certificate({4, 9}, ones, comps, rect);
  ASSERT_EQ(cert.subset_terms.size(), 3u);
  EXPECT_EQ(cert.subset_terms[0].point, (LatticePoint{6, 6}));
  EXPECT_EQ(cert.subset_terms[1].point, (LatticePoint{5, 7}));
  EXPECT_EQ(cert.subset_terms[2].point, (LatticePoint{7, 4}));
  const double wp = comps[0].omega;
  const double wq = comps[1].omega;
  EXPECT_NEAR(std::abs(cert.subset_terms[0].coefficient - std::polar(1.0, wp)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(cert.subset_terms[1].coefficient - std::polar(1.0, wq)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(cert.subset_terms[2].coefficient + std::polar(1.0, wp + wq)), 0.0, 1e-15);
}

TEST(Certificate, ThreeComponentSigns) {
  const LatticeRect rect(15, 15);
  const auto comps = make_set({{3, 2}, {2, 1}, {1, 3}});
  const std::vector<Index> ones{1, 1, 1};
  const auto cert = make_certificate({2, 8}, ones, comps, rect);
  ASSERT_EQ(cert.subset_terms.size(), 7u);
  const std::vector<double> signs{1, 1, 1, -1, -1, -1, 1};
  const std::vector<std::vector<int>> members{{0}, {1}, {2}, {0, 1}, {0, 2}, {1, 2}, {0, 1, 2}};
  for (std::size_t i = 0; i < 7; ++i) {
    double phase = 0.0;
    for (int k : members[i]) phase += comps[static_cast<std::size_t>(k)].omega;
    EXPECT_NEAR(std::abs(cert.subset_terms[i].coefficient - signs[i] * std::polar(1.0, phase)), 0.0, 1e-14);
  }
}

TEST(Certificate, VerticalSingleShiftUsesConventionSign) {
  const LatticeRect rect(4, 3);
  const auto comps = make_set({{0, 1}}, 1.3);
  const std::vector<Index> one{1};
  const auto cert = make_certificate({0, 2}, one, comps, rect);
  ASSERT_EQ(cert.subset_terms.size(), 1u);
  EXPECT_EQ(cert.subset_terms[0].point, (LatticePoint{1, 2}));
  // e(1,m) = s(m) e^{j w}, so e(0,m) = e(1,m) e^{-j w} under the (1,0) companion.
  EXPECT_NEAR(std::abs(cert.subset_terms[0].coefficient - std::polar(1.0, -1.3)), 0.0, 1e-15);
  EXPECT_LE(verify_certificate(cert, assemble_gamma(comps, rect)), 1e-12);
  EXPECT_LE(verify_certificate(cert, synthesize_sum(comps, rect)), 1e-12);
}

TEST(Certificate, RejectsInadmissibleShifts) {
  const LatticeRect rect(6, 6);
  const auto comps = make_set({{3, 2}, {2, 1}});
  const std::vector<Index> ones{1, 1};
  EXPECT_THROW(make_certificate({5, 5}, ones, comps, rect), std::invalid_argument);
  const std::vector<Index> wrong_len{1};
  EXPECT_THROW(make_certificate({0, 5}, wrong_len, comps, rect), std::invalid_argument);
}

TEST(Certificate, AllOnesValidOnDependentBandForTwoComponents) {
  const LatticeRect rect(15, 15);
  for (const auto& set : std::vector<std::vector<std::pair<Index, Index>>>{{{3, 2}, {2, 1}}, {{3, 2}, {2, -1}}}) {
    const auto comps = make_set(set);
    const auto model = assemble_gamma(comps, rect);
    const auto field = synthesize_sum(comps, rect, 9);
    const auto dependent = dependent_point_set(comps, rect);
    ASSERT_EQ(dependent.size(), 120u);
    const std::vector<Index> ones{1, 1};
    for (const auto& p : dependent) {
      const auto cert = make_certificate(p, ones, comps, rect);
      EXPECT_LE(verify_certificate(cert, model), 1e-10);
      EXPECT_LE(verify_certificate(cert, field), 1e-10);
    }
  }
}

TEST(Certificate, SignedSearchAlsoRelatesIndependentPoints) {
  const LatticeRect rect(8, 9);
  const auto comps = make_set({{2, 1}, {1, 2}});
  const auto model = assemble_gamma(comps, rect);
  const auto cert = find_certificate({1, 1}, comps, rect, ShiftSign::any);
  ASSERT_TRUE(cert.has_value());
  EXPECT_FALSE(cert->trivial());
  EXPECT_LE(verify_certificate(*cert, model), 1e-10);
  EXPECT_FALSE(find_certificate({1, 1}, comps, rect).has_value());
}

TEST(Certificate, SearchFindsCertificatesExactlyOnDependentSet) {
  const LatticeRect rect(8, 9);
  for (const auto& set : std::vector<std::vector<std::pair<Index, Index>>>{
           {{2, 1}, {1, 2}}, {{2, 1}, {1, -2}}, {{0, 1}, {1, 1}}, {{1, 1}, {1, 1}}}) {
    const auto comps = make_set(set);
    const auto model = assemble_gamma(comps, rect);
    for (const auto& p : independent_point_set(comps, rect)) {
      EXPECT_FALSE(find_certificate(p, comps, rect).has_value()) << p.n << "," << p.m;
    }
    for (const auto& p : dependent_point_set(comps, rect)) {
      const auto cert = find_certificate(p, comps, rect);
      ASSERT_TRUE(cert.has_value());
      EXPECT_FALSE(cert->trivial());
      EXPECT_LE(verify_certificate(*cert, model), 1e-10);
    }
  }
}

TEST(Certificate, RequiresComplexModel) {
  const LatticeRect rect(4, 4);
  const auto comps = make_set({{1, 1}});
  const std::vector<Index> zero{0};
  const auto cert = make_certificate({0, 0}, zero, comps, rect);
  EXPECT_THROW(verify_certificate(cert, assemble_gamma(comps, rect, FieldKind::real_valued)), std::invalid_argument);
}
