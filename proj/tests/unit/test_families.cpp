#include <gtest/gtest.h>

#include <numeric>

#include "oracles.hpp"
#include "tenrank/families.hpp"

using namespace tenrank;

namespace {

// Enumeration oracle: every multi-index in (C^d)^n with the given digit sum.
std::size_t count_with_sum(int d, int n, int sum) {
  std::size_t count = 0;
  Shape s = Shape::uniform(d, n);
  for (Index k = 0; k < s.size(); ++k) {
    auto idx = s.multi(k);
    if (std::accumulate(idx.begin(), idx.end(), 0) == sum) ++count;
  }
  return count;
}

int digit_sum(const CycTensor& t, Index k) {
  auto idx = t.shape().multi(k);
  return std::accumulate(idx.begin(), idx.end(), 0);
}

}  // namespace

TEST(Families, Y3Terms) {
  CycTensor l = l_state(3, 3);
  EXPECT_EQ(l.nnz(), 6u);
  for (auto idx : std::vector<std::vector<int>>{{0, 0, 2}, {0, 2, 0}, {2, 0, 0}, {0, 1, 1}, {1, 0, 1}, {1, 1, 0}}) EXPECT_TRUE(l.at(idx).is_one());
  EXPECT_EQ(make_state({Family::Y, 3, 3}), l);
  FamilySpec y{Family::Y, 7, 4};
  EXPECT_EQ(y.normalized().d, 3);
}

TEST(Families, QubitCollapse) {
  for (int n = 2; n <= 7; ++n) {
    EXPECT_EQ(l_state(2, n), w_state(n));
    EXPECT_EQ(m_state(2, n), w_state(n));
    EXPECT_EQ(n_state(2, n), w_state(n));
    EXPECT_EQ(dicke(n, 1), w_state(n));
  }
}

TEST(Families, EntryCounts) {
  // weak compositions of 2 into 4 parts: C(5,3) = 10
  EXPECT_EQ(l_state(3, 4).nnz(), 10u);
  EXPECT_EQ(count_with_sum(3, 4, 2), 10u);
  for (int d = 2; d <= 5; ++d)
    for (int n = 2; n <= 6; ++n) {
      EXPECT_EQ(l_state(d, n).nnz(), count_with_sum(d, n, d - 1));
      EXPECT_EQ(n_state(d, n).nnz(), static_cast<std::size_t>((n - 1) * (d - 1) + 1));
      EXPECT_EQ(ghz(d, n).nnz(), static_cast<std::size_t>(d));
    }
  for (int n = 2; n <= 7; ++n)
    for (int l = 0; l <= n; ++l) EXPECT_EQ(Rational(static_cast<std::int64_t>(dicke(n, l).nnz())), binomial(n, l));
}

TEST(Families, SupportShape) {
  for (int d = 2; d <= 5; ++d)
    for (int n = 2; n <= 6; ++n) {
      CycTensor l = l_state(d, n);
      for (const auto& [k, v] : l.entries()) EXPECT_EQ(digit_sum(l, k), d - 1);
      for (const CycTensor& t : {m_state(d, n), n_state(d, n)})
        for (const auto& [k, v] : t.entries()) EXPECT_LE(digit_sum(t, k), d - 1);
    }
}

TEST(Families, AllConcise) {
  for (Family f : {Family::L, Family::M, Family::MPRIME, Family::N, Family::NPRIME})
    for (int d = 2; d <= 5; ++d)
      for (int n = 2; n <= 6; ++n) {
        FamilySpec s{f, d, n};
        EXPECT_TRUE(multilinear_profile(make_state(s)).is_concise()) << s.str();
      }
}

TEST(Families, WKronWIsM4) {
  for (int n = 2; n <= 5; ++n) EXPECT_EQ(kronecker_product(w_state(n), w_state(n)), m_state(4, n));
}

TEST(Families, MBasisChange) {
  EXPECT_EQ(m_basis_change(3), CycMatrix::identity(3));
  CycMatrix b5 = m_basis_change(5);
  for (int fixed : {0, 2, 4})
    for (int r = 0; r < 5; ++r) EXPECT_EQ(b5(r, fixed), Cyclotomic(r == fixed ? 1 : 0));
  EXPECT_FALSE(b5(3, 1).is_zero());
  EXPECT_FALSE(b5(1, 3).is_zero());
  EXPECT_FALSE(determinant(b5).is_zero());
  EXPECT_THROW(m_basis_change(2), Error);
  // exact image, scalar 1 (see README on the basis-change convention)
  for (int d = 3; d <= 6; ++d)
    for (int n = 2; n <= 5; ++n) EXPECT_EQ(slocc_apply(m_state(d, n), uniform_map(m_basis_change(d), n)), mprime_state(d, n)) << d << " " << n;
}

TEST(Families, PrimedVariants) {
  EXPECT_EQ(mprime_state(3, 4), m_state(3, 4));
  for (int d = 2; d <= 5; ++d)
    for (int n = 2; n <= 5; ++n) {
      CycLocalMap flip = uniform_map(CycMatrix::identity(d), n);
      flip.back() = flip_matrix(d);
      EXPECT_EQ(slocc_apply(n_state(d, n), flip), nprime_state(d, n));
    }
}

TEST(Families, Nonsym4) {
  FamilySpec s{Family::NONSYM4, 2, 4};
  s.alpha = 1;
  s.beta = 2;
  CycTensor t = make_state(s);
  EXPECT_EQ(t.at({0, 0, 1, 1}), Cyclotomic(1));
  EXPECT_EQ(t.at({0, 1, 0, 1}), Cyclotomic(4));
  EXPECT_EQ(t.at({0, 1, 1, 0}), Cyclotomic(9));
  s.sign = -1;
  EXPECT_EQ(make_state(s).at({0, 1, 1, 0}), Cyclotomic(1));
  EXPECT_EQ(t.nnz(), 6u);
}

TEST(Families, SpecValidation) {
  EXPECT_THROW(make_state({Family::L, 1, 3}), Error);
  EXPECT_THROW(make_state({Family::L, 3, 1}), Error);
  FamilySpec dk{Family::DICKE, 2, 3};
  dk.l = 4;
  EXPECT_THROW(make_state(dk), Error);
  EXPECT_EQ(parse_family("M'"), Family::MPRIME);
  EXPECT_EQ(parse_family("nprime"), Family::NPRIME);
  EXPECT_FALSE(parse_family("bogus"));
}
