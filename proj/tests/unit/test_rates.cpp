#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"
#include "tenrank/decomposition.hpp"
#include "tenrank/families.hpp"
#include "tenrank/rates.hpp"

using namespace tenrank;

TEST(Rates, SchmidtProfiles) {
  auto g = schmidt_profile(ghz(3, 4));
  EXPECT_EQ(g.size(), 7u);
  for (const auto& [cut, r] : g) EXPECT_EQ(r, 3);
  for (const CycTensor& t : {l_state(3, 4), m_state(3, 4), n_state(3, 4)})
    for (const auto& [cut, r] : schmidt_profile(t)) EXPECT_EQ(r, 3);
  auto prod = schmidt_profile(CycTensor::from_entries(Shape::uniform(2, 4), {{{0, 0, 0, 0}, 1}}));
  for (const auto& [cut, r] : prod) EXPECT_EQ(r, 1);
  for (const auto& [cut, r] : schmidt_profile(l_state(3, 4))) EXPECT_EQ(r, oracle::flattening_rank(l_state(3, 4), cut.members()));
  EXPECT_THROW(schmidt_profile(w_state(9)), Error);
  EXPECT_EQ(schmidt_profile(w_state(9), 9).size(), 255u);
}

TEST(Rates, LogRatioComparisonAgreesWithFloatingPoint) {
  for (int a1 = 2; a1 <= 9; ++a1)
    for (int b1 = 2; b1 <= 9; ++b1)
      for (int a2 = 2; a2 <= 9; ++a2)
        for (int b2 = 2; b2 <= 9; ++b2) {
          const double x = std::log(a1) / std::log(b1), y = std::log(a2) / std::log(b2);
          const int c = compare_log_ratio(a1, b1, a2, b2);
          if (std::abs(x - y) > 1e-9) {
            EXPECT_EQ(c, x < y ? -1 : 1) << a1 << b1 << a2 << b2;
          } else {
            EXPECT_EQ(c, 0) << a1 << b1 << a2 << b2;
          }
        }
  // 4/2 and 9/3 are equal ratios; only exact arithmetic sees it
  EXPECT_EQ(compare_log_ratio(4, 2, 9, 3), 0);
  EXPECT_EQ(compare_log_ratio(8, 4, 27, 9), 0);
}

TEST(Rates, LowerBoundExamples) {
  for (int d = 2; d <= 4; ++d) {
    RateBound b = rate_lower_bound(ghz(d, 3), l_state(d, 3));
    EXPECT_EQ(b.best_pair, std::make_pair(d, d));
    EXPECT_TRUE(b.value_is_at_least_one);
    EXPECT_FALSE(b.value_exceeds_one);
  }
  RateBound down = rate_lower_bound(ghz(4, 3), ghz(2, 3));
  EXPECT_EQ(down.best_pair, std::make_pair(2, 4));
  EXPECT_FALSE(down.value_is_at_least_one);
  RateBound same = rate_lower_bound(w_state(3), w_state(3));
  EXPECT_EQ(same.best_pair, std::make_pair(2, 2));
  EXPECT_TRUE(same.value_is_at_least_one);
  EXPECT_THROW(rate_lower_bound(w_state(3), w_state(4)), Error);
}

TEST(Rates, RateOneExamples) {
  auto lm = rate_one_certificate(l_state(3, 3), m_state(3, 3), canonical_chain_maps(ChainStep::L_TO_M, 3, 3));
  EXPECT_TRUE(lm.rate_one);
  ASSERT_TRUE(lm.degeneration);
  EXPECT_TRUE(lm.degeneration->verified);
  auto gn = rate_one_certificate(ghz(3, 4), n_state(3, 4), canonical_rate_maps(Family::GHZ, Family::N, 3, 4));
  EXPECT_TRUE(gn.rate_one);
  // the cut bound is log 4 / log 2 = 2 here, so the degeneration half is what fails
  auto up = rate_one_certificate(ghz(2, 3), ghz(4, 3), to_eps(uniform_map(CycMatrix(4, 2), 3)));
  EXPECT_FALSE(up.rate_one);
  EXPECT_EQ(up.failing, "degeneration");
  EXPECT_TRUE(up.bound.value_exceeds_one);
  auto down = rate_one_certificate(ghz(4, 3), ghz(2, 3), to_eps(uniform_map(CycMatrix(2, 4, {1, 0, 0, 0, 0, 1, 0, 0}), 3)));
  EXPECT_FALSE(down.rate_one);
  EXPECT_EQ(down.failing, "lower-bound");
}

TEST(Rates, AllSixPairs) {
  const std::pair<Family, Family> pairs[] = {{Family::L, Family::M},   {Family::M, Family::N},   {Family::L, Family::N},
                                             {Family::GHZ, Family::L}, {Family::GHZ, Family::M}, {Family::GHZ, Family::N}};
  for (const auto& [s, t] : pairs)
    for (int d = 2; d <= 4; ++d)
      for (int n = 3; n <= 5; ++n) {
        auto rc = rate_one_certificate(make_state({s, d, n}), make_state({t, d, n}), canonical_rate_maps(s, t, d, n));
        EXPECT_TRUE(rc.rate_one) << to_string(s) << "->" << to_string(t) << " " << d << " " << n;
      }
  EXPECT_THROW(canonical_rate_maps(Family::N, Family::L, 3, 3), Error);
}

TEST(Rates, SloccFromDecomposition) {
  for (int n = 3; n <= 5; ++n) {
    auto m = slocc_from_decomposition(w_state(n), decompose_trivial(Family::W, 2, n));
    EXPECT_EQ(slocc_apply(ghz(n, n), m), w_state(n));
  }
  auto l = slocc_from_decomposition(l_state(3, 3), decompose_l(3, 3));
  EXPECT_EQ(m_state(3, 3).shape(), l_state(3, 3).shape());
  EXPECT_EQ(slocc_apply(ghz(5, 3), l), l_state(3, 3));
  CycTensor prod = CycTensor::from_entries(Shape::uniform(2, 3), {{{0, 0, 0}, 1}});
  auto p = slocc_from_decomposition(prod, decompose_support(prod));
  EXPECT_EQ(slocc_apply(ghz(1, 3), p), prod);
  for (Family f : {Family::L, Family::M, Family::MPRIME, Family::N, Family::NPRIME})
    for (int d = 2; d <= 4; ++d) {
      FamilySpec s{f, d, 4};
      CycDecomposition dec = decompose_family(s);
      EXPECT_EQ(slocc_apply(ghz(dec.size(), 4), slocc_from_decomposition(make_state(s), dec)), make_state(s)) << s.str();
    }
  CycDecomposition bad = decompose_trivial(Family::W, 2, 3);
  bad.terms.pop_back();
  EXPECT_THROW(slocc_from_decomposition(w_state(3), bad), Error);
}
