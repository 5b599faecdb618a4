#include <gtest/gtest.h>

#include "oracles.hpp"
#include "tenrank/decomposition.hpp"
#include "tenrank/degeneration.hpp"
#include "tenrank/families.hpp"
#include "tenrank/rates.hpp"

using namespace tenrank;

namespace {

EpsMatrix diag_eps(const std::vector<int>& powers) {
  std::vector<EpsLaurent> d;
  for (int p : powers) d.push_back(EpsLaurent::monomial(p));
  return EpsMatrix::diagonal(d);
}

}  // namespace

TEST(Degeneration, LToMAtThreeQutrits) {
  EpsMatrix a = diag_eps({-2, 1, 4});
  auto cert = verify_degeneration(l_state(3, 3), {a, a, a}, m_state(3, 3));
  EXPECT_TRUE(cert.verified);
  // M(3,n) = L(3,n), and every support index of L(3,3) has weight 0 under these maps
  EXPECT_EQ(m_state(3, 3), l_state(3, 3));
  EXPECT_EQ(cert.error_degree, 0);
  EXPECT_EQ(cert.normalization_shift, 6);
  EXPECT_FALSE(cert.scalar.is_zero());
}

TEST(Degeneration, MToNAtThreeQutrits) {
  EpsMatrix a = diag_eps({0, 1, 0});
  EpsMatrix inv = diag_eps({0, -1, 0});
  auto cert = verify_degeneration(m_state(3, 3), {a, a, inv}, n_state(3, 3));
  EXPECT_TRUE(cert.verified);
}

TEST(Degeneration, IdentityIsExact) {
  CycTensor t = l_state(3, 4);
  auto cert = verify_degeneration(t, to_eps(uniform_map(CycMatrix::identity(3), 4)), t);
  EXPECT_TRUE(cert.verified);
  EXPECT_EQ(cert.approximation_degree, 0);
  EXPECT_EQ(cert.error_degree, 0);
  EXPECT_TRUE(cert.scalar.is_one());
}

TEST(Degeneration, Rejections) {
  EpsLocalMap id = to_eps(uniform_map(CycMatrix::identity(2), 3));
  try {
    verify_degeneration(w_state(3), id, ghz(2, 3));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotADegeneration);
  }
  EXPECT_THROW(verify_degeneration(w_state(3), id, ghz(3, 3)), Error);
  EXPECT_THROW(canonical_chain_maps(ChainStep::L_TO_M, 3, 2), Error);
  EXPECT_THROW(canonical_chain_maps(ChainStep::M_TO_N, 1, 3), Error);
}

TEST(Degeneration, CanonicalChainEverywhere) {
  for (int d = 2; d <= 5; ++d)
    for (int n = 3; n <= 5; ++n) {
      auto lm = canonical_chain_maps(ChainStep::L_TO_M, d, n);
      auto mn = canonical_chain_maps(ChainStep::M_TO_N, d, n);
      EXPECT_TRUE(verify_degeneration(l_state(d, n), lm, m_state(d, n)).verified);
      EXPECT_TRUE(verify_degeneration(m_state(d, n), mn, n_state(d, n)).verified);
      EXPECT_TRUE(verify_degeneration(l_state(d, n), compose(mn, lm), n_state(d, n)).verified);
    }
  EXPECT_EQ(parse_chain_step(to_string(ChainStep::M_TO_N)), ChainStep::M_TO_N);
}

TEST(Degeneration, EpsDecompositionShapes) {
  EpsDecomposition l23 = eps_decomposition(Family::L, 2, 3);
  EXPECT_EQ(l23.size(), 2);
  // lowest order of the expansion is W3, nothing below it
  EpsTensor x = expand(l23);
  int low = 1000;
  for (const auto& [k, v] : x.entries()) low = std::min(low, v.lowest().first);
  EXPECT_EQ(low, 0);
  EXPECT_EQ(eps_coefficient(x, 0), w_state(3));
  EXPECT_EQ(eps_decomposition(Family::NPRIME, 3, 3).size(), 3);
  EXPECT_EQ(eps_decomposition(Family::MPRIME, 4, 4).size(), 4);
  EXPECT_THROW(eps_decomposition(Family::MPRIME, 2, 3), Error);
  EXPECT_THROW(eps_decomposition(Family::GHZ, 3, 3), Error);
}

TEST(Degeneration, NegativeOrdersCancel) {
  for (int d = 2; d <= 5; ++d)
    for (int n = 3; n <= 5; ++n) {
      std::vector<std::pair<Family, CycTensor>> cases{{Family::L, l_state(d, n)}, {Family::NPRIME, nprime_state(d, n)}};
      if (d >= 3) cases.emplace_back(Family::MPRIME, mprime_state(d, n));
      for (const auto& [f, target] : cases) {
        EpsTensor x = expand(eps_decomposition(f, d, n));
        int low = 1000;
        for (const auto& [k, v] : x.entries()) low = std::min(low, v.lowest().first);
        EXPECT_EQ(low, 0) << to_string(f) << " " << d << " " << n;
        EXPECT_EQ(eps_coefficient(x, 0), target);
      }
    }
}

TEST(Degeneration, BorderRankEverywhere) {
  for (int d = 2; d <= 5; ++d)
    for (int n = 3; n <= 5; ++n) {
      auto l = border_rank_certificate(l_state(d, n), eps_decomposition(Family::L, d, n));
      EXPECT_TRUE(l.exact());
      EXPECT_EQ(l.upper, d);
      auto np = border_rank_certificate(nprime_state(d, n), eps_decomposition(Family::NPRIME, d, n));
      EXPECT_TRUE(np.exact());
      if (d >= 3) {
      EXPECT_TRUE(border_rank_certificate(mprime_state(d, n), eps_decomposition(Family::MPRIME, d, n)).exact());
    }
      auto lm = canonical_chain_maps(ChainStep::L_TO_M, d, n);
      auto mn = canonical_chain_maps(ChainStep::M_TO_N, d, n);
      EpsDecomposition m_dec = map_decomposition(lm, eps_decomposition(Family::L, d, n));
      auto m = border_rank_certificate(m_state(d, n), m_dec);
      EXPECT_TRUE(m.exact());
      EXPECT_EQ(m.lower, d);
      auto nn = border_rank_certificate(n_state(d, n), map_decomposition(mn, m_dec));
      EXPECT_TRUE(nn.exact());
      // brk <= rk
      EXPECT_LE(nn.upper, decompose_family({Family::N, d, n}).size());
    }
  auto g = border_rank_certificate(ghz(4, 3), to_eps(decompose_trivial(Family::GHZ, 4, 3)));
  EXPECT_TRUE(g.exact());
  EXPECT_EQ(g.upper, 4);
  try {
    border_rank_certificate(m_state(4, 4), eps_decomposition(Family::L, 4, 4));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::InvalidEpsDecomposition);
  }
}

TEST(Degeneration, GhzDegenerations) {
  auto maps = ghz_degeneration_from_eps(eps_decomposition(Family::L, 3, 3), 3);
  EXPECT_TRUE(verify_degeneration(ghz(3, 3), maps, l_state(3, 3)).verified);
  auto np = ghz_degeneration_from_eps(eps_decomposition(Family::NPRIME, 4, 3), 3);
  EXPECT_TRUE(verify_degeneration(ghz(4, 3), np, nprime_state(4, 3)).verified);
  for (int n = 3; n <= 5; ++n) {
    auto exact = ghz_degeneration_from_eps(to_eps(decompose_trivial(Family::W, 2, n)), n);
    auto cert = verify_degeneration(ghz(n, n), exact, w_state(n));
    EXPECT_EQ(cert.approximation_degree, 0);
    EXPECT_EQ(cert.error_degree, 0);
  }
  EXPECT_THROW(ghz_degeneration_from_eps(EpsDecomposition{Shape::uniform(2, 3), {}, ""}, 3), Error);
}

TEST(Degeneration, FlatteningRanksDropAlongDegenerations) {
  for (int d = 2; d <= 4; ++d)
    for (int n = 3; n <= 4; ++n) {
      std::vector<std::tuple<CycTensor, EpsLocalMap, CycTensor>> cases{
          {l_state(d, n), canonical_chain_maps(ChainStep::L_TO_M, d, n), m_state(d, n)},
          {m_state(d, n), canonical_chain_maps(ChainStep::M_TO_N, d, n), n_state(d, n)},
          {ghz(d, n), ghz_degeneration_from_eps(eps_decomposition(Family::L, d, n), n), l_state(d, n)}};
      for (const auto& [src, maps, tgt] : cases) {
        ASSERT_TRUE(verify_degeneration(src, maps, tgt).verified);
        auto ps = schmidt_profile(src), pt = schmidt_profile(tgt);
        for (std::size_t k = 0; k < ps.size(); ++k) EXPECT_LE(pt[k].second, ps[k].second);
      }
    }
}
