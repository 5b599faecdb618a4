#include <gtest/gtest.h>

#include "oracles.hpp"
#include "tenrank/decomposition.hpp"
#include "tenrank/families.hpp"

using namespace tenrank;

namespace {

int minimal_rank(int d, int n) { return (n - 1) * (d - 1) + 1; }

}  // namespace

TEST(Decomposition, VerifyBasics) {
  for (int d = 2; d <= 5; ++d) EXPECT_TRUE(verify_decomposition(ghz(d, 3), decompose_trivial(Family::GHZ, d, 3)));
  CycDecomposition w = decompose_trivial(Family::W, 2, 3);
  w.terms.pop_back();
  EXPECT_FALSE(verify_decomposition(w_state(3), w));
  EXPECT_THROW(verify_decomposition(w_state(4), w), Error);
  EXPECT_THROW(decompose_trivial(Family::L, 3, 3), Error);
}

TEST(Decomposition, TrivialCounts) {
  EXPECT_EQ(decompose_trivial(Family::GHZ, 5, 3).size(), 5);
  CycDecomposition w6 = decompose_trivial(Family::W, 2, 6);
  EXPECT_EQ(w6.size(), 6);
  EXPECT_TRUE(verify_decomposition(w_state(6), w6));
  CycDecomposition n34 = decompose_trivial(Family::N, 3, 4);
  EXPECT_EQ(n34.size(), 7);
  EXPECT_TRUE(verify_decomposition(n_state(3, 4), n34));
}

TEST(Decomposition, LFamilyRootsOfUnity) {
  CycDecomposition l34 = decompose_l(3, 4);
  EXPECT_EQ(l34.size(), 7);
  EXPECT_TRUE(verify_decomposition(l_state(3, 4), l34));
  CycDecomposition l33 = decompose_l(3, 3);
  EXPECT_EQ(l33.size(), 5);
  EXPECT_TRUE(verify_decomposition(l_state(3, 3), l33));
  for (int n = 2; n <= 6; ++n) EXPECT_TRUE(verify_decomposition(w_state(n), decompose_l(2, n)));
  CycDecomposition l45 = decompose_l(4, 5);
  EXPECT_EQ(l45.size(), 13);
  EXPECT_TRUE(verify_decomposition(l_state(4, 5), l45));
  // independent check in floating point
  EXPECT_TRUE(oracle::matches(l_state(4, 5), oracle::expand(l45)));
  EXPECT_TRUE(oracle::matches(l_state(3, 4), oracle::expand(l34)));
}

TEST(Decomposition, MonomialWaring) {
  CycDecomposition w2 = decompose_monomial_waring(1, 1);
  EXPECT_EQ(w2.size(), 2);
  EXPECT_TRUE(verify_decomposition(w_state(2), w2));
  for (int n = 4; n <= 7; ++n) {
    CycDecomposition d2 = decompose_monomial_waring(n - 2, 2);
    EXPECT_EQ(d2.size(), n - 1);
    EXPECT_TRUE(verify_decomposition(dicke(n, 2), d2)) << n;
  }
  CycDecomposition d52 = decompose_monomial_waring(3, 2);
  EXPECT_EQ(d52.size(), 4);
  EXPECT_TRUE(verify_decomposition(dicke(5, 2), d52));
  EXPECT_TRUE(oracle::matches(dicke(5, 2), oracle::expand(d52)));
  EXPECT_THROW(decompose_monomial_waring(1, 2), Error);
}

TEST(Decomposition, MFamilies) {
  CycDecomposition mp34 = decompose_m(3, 4, Family::MPRIME);
  EXPECT_EQ(mp34.size(), 7);
  EXPECT_TRUE(verify_decomposition(mprime_state(3, 4), mp34));
  for (int n = 2; n <= 6; ++n) {
    CycDecomposition m4 = decompose_m(4, n, Family::M);
    EXPECT_EQ(m4.size(), 3 * n - 2);
    EXPECT_TRUE(verify_decomposition(m_state(4, n), m4));
    CycDecomposition m2 = decompose_m(2, n, Family::M);
    EXPECT_EQ(m2.size(), n);
    EXPECT_TRUE(verify_decomposition(w_state(n), m2));
  }
  EXPECT_TRUE(oracle::matches(m_state(5, 4), oracle::expand(decompose_m(5, 4, Family::M))));
}

TEST(Decomposition, EveryConstructorVerifies) {
  for (Family f : {Family::L, Family::M, Family::MPRIME, Family::N, Family::NPRIME})
    for (int d = 2; d <= 5; ++d)
      for (int n = 2; n <= 6; ++n) {
        FamilySpec s{f, d, n};
        CycDecomposition dec = decompose_family(s);
        EXPECT_EQ(dec.size(), minimal_rank(d, n)) << s.str();
        EXPECT_TRUE(verify_decomposition(make_state(s), dec)) << s.str();
      }
}

TEST(Decomposition, MapDecomposition) {
  CycDecomposition w3 = decompose_trivial(Family::W, 2, 3);
  CycLocalMap id = uniform_map(CycMatrix::identity(2), 3);
  CycDecomposition same = map_decomposition(id, w3);
  EXPECT_EQ(same.size(), w3.size());
  EXPECT_TRUE(verify_decomposition(w_state(3), same));
  CycMatrix proj(2, 2);
  proj(0, 0) = 1;
  CycLocalMap m = id;
  m[1] = proj;
  CycDecomposition projected = map_decomposition(m, w3);
  EXPECT_LE(projected.size(), 3);
  EXPECT_TRUE(verify_decomposition(slocc_apply(w_state(3), m), projected));
  // M' decomposition pulled back to M through the inverse basis change
  for (int d = 4; d <= 5; ++d) {
    CycLocalMap back = uniform_map(inverse(m_basis_change(d)), 3);
    EXPECT_TRUE(verify_decomposition(m_state(d, 3), map_decomposition(back, decompose_m(d, 3, Family::MPRIME))));
  }
}

TEST(Decomposition, ProductChain) {
  // rk(a [x] b) <= rk(a (x) b) <= rk(a) rk(b), instantiated by verified term counts
  std::vector<FamilySpec> specs{{Family::W, 2, 3}, {Family::GHZ, 2, 3}, {Family::L, 3, 3}, {Family::N, 3, 3}};
  for (const auto& a : specs)
    for (const auto& b : specs) {
      CycDecomposition da = decompose_family(a), db = decompose_family(b);
      CycDecomposition kron = kronecker_product(da, db), tens = tensor_product(da, db);
      CycTensor ta = make_state(a), tb = make_state(b);
      ASSERT_TRUE(verify_decomposition(kronecker_product(ta, tb), kron));
      ASSERT_TRUE(verify_decomposition(tensor_product(ta, tb), tens));
      EXPECT_LE(kron.size(), tens.size());
      EXPECT_LE(tens.size(), da.size() * db.size());
    }
}

TEST(Decomposition, DirectSum) {
  CycDecomposition d = direct_sum(decompose_trivial(Family::W, 2, 3), decompose_trivial(Family::GHZ, 2, 3));
  EXPECT_EQ(d.size(), 5);
  EXPECT_TRUE(verify_decomposition(direct_sum(w_state(3), ghz(2, 3)), d));
}
