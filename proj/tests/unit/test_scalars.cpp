#include <gtest/gtest.h>

#include "oracles.hpp"
#include "tenrank/cyclotomic.hpp"
#include "tenrank/eps_laurent.hpp"
#include "tenrank/scalar_io.hpp"

using namespace tenrank;

namespace {

Cyclotomic z(int m, int k) { return Cyclotomic::root(m, k); }

}  // namespace

TEST(Rational, LowestTermsAndSign) {
  Rational r(6, -4);
  EXPECT_EQ(r.str(), "-3/2");
  EXPECT_EQ(Rational(0, 7).str(), "0");
  EXPECT_EQ(Rational(0, 7), Rational(0));
  EXPECT_THROW(Rational(1, 0), Error);
  EXPECT_EQ(Rational::parse("-10/4"), Rational(-5, 2));
  EXPECT_THROW(Rational::parse("1/x"), Error);
}

TEST(Rational, OverflowPromotesAndDemotes) {
  const Rational big(std::int64_t{1} << 62);
  Rational sq = big * big;
  EXPECT_EQ(sq.to_mpq(), mpq_class(mpz_class(1) << 124));
  EXPECT_EQ(sq / big, big);
  EXPECT_TRUE((sq - sq).is_zero());
  EXPECT_EQ(sq / sq, Rational(1));
  EXPECT_EQ(binomial(60, 30).to_mpq(), mpq_class("118264581564861424"));
}

TEST(Cyclotomic, RootExamples) {
  EXPECT_TRUE(z(1, 0).is_one());
  EXPECT_EQ(z(4, 2), Cyclotomic(-1));
  EXPECT_EQ(z(3, 1) + z(3, 2), Cyclotomic(-1));
  EXPECT_TRUE((z(5, 2) * z(5, 3)).is_one());
  EXPECT_EQ(z(7, 7), Cyclotomic(1));
  EXPECT_EQ(z(6, -1), z(6, 5));
}

TEST(Cyclotomic, InverseOfOnePlusZeta3) {
  Cyclotomic a = Cyclotomic(1) + z(3, 1);
  EXPECT_EQ(a.inverse(), -z(3, 1));
  EXPECT_TRUE((a * -z(3, 1)).is_one());
  EXPECT_THROW(Cyclotomic(0).inverse(), Error);
}

TEST(Cyclotomic, MixedOrdersLiftToLcm) {
  Cyclotomic s = z(4, 1) + z(3, 1);
  EXPECT_EQ(s.order(), 12);
  EXPECT_TRUE(oracle::close(oracle::eval(s), oracle::eval(z(4, 1)) + oracle::eval(z(3, 1))));
  // the lifted summands are z12^3 and z12^4
  EXPECT_EQ(s, z(12, 3) + z(12, 4));
  EXPECT_EQ(z(4, 1).lifted(12).minimal(), z(4, 1));
}

TEST(Cyclotomic, PhiDegrees) {
  for (int m = 1; m <= 60; ++m) EXPECT_EQ(static_cast<int>(cyclotomic_polynomial(m).size()) - 1, euler_phi(m)) << m;
  EXPECT_EQ(cyclotomic_polynomial(3), (std::vector<std::int64_t>{1, 1, 1}));
  EXPECT_EQ(cyclotomic_polynomial(12), (std::vector<std::int64_t>{1, 0, -1, 0, 1}));
}

TEST(Cyclotomic, RootFilterSumExhaustive) {
  EXPECT_EQ(root_filter_sum(5, 10), Rational(5));
  EXPECT_EQ(root_filter_sum(5, 3), Rational(0));
  EXPECT_EQ(root_filter_sum(1, 7), Rational(1));
  for (int r = 1; r <= 12; ++r)
    for (int q = -30; q <= 30; ++q) EXPECT_EQ(root_filter_sum(r, q), Rational(q % r == 0 ? r : 0)) << r << " " << q;
}

TEST(Cyclotomic, FieldAxiomsRandomized) {
  std::mt19937_64 rng(7);
  const int orders[] = {1, 3, 4, 5, 7, 8, 12, 15};
  for (int trial = 0; trial < 200; ++trial) {
    Cyclotomic a = oracle::random_cyclotomic(rng, orders[trial % 8]);
    Cyclotomic b = oracle::random_cyclotomic(rng, orders[(trial / 8) % 8]);
    Cyclotomic c = oracle::random_cyclotomic(rng, orders[(trial + 3) % 8]);
    EXPECT_EQ((a * b) * c, a * (b * c));
    EXPECT_EQ((a + b) + c, a + (b + c));
    EXPECT_EQ(a * (b + c), a * b + a * c);
    EXPECT_EQ(a * b, b * a);
    EXPECT_TRUE((a - a).is_zero());
    if (!a.is_zero()) {
      EXPECT_TRUE((a * a.inverse()).is_one());
    }
    EXPECT_TRUE(oracle::close(oracle::eval(a * b), oracle::eval(a) * oracle::eval(b)));
    EXPECT_TRUE(oracle::close(oracle::eval(a + c), oracle::eval(a) + oracle::eval(c)));
  }
}

TEST(Cyclotomic, LiftIsRingEmbedding) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 60; ++trial) {
    Cyclotomic a = oracle::random_cyclotomic(rng, 6), b = oracle::random_cyclotomic(rng, 4);
    const int m = 12 * (1 + trial % 3);
    EXPECT_EQ((a * b).lifted(m), a.lifted(m) * b.lifted(m));
    EXPECT_EQ((a + b).lifted(m), a.lifted(m) + b.lifted(m));
    EXPECT_EQ(a.lifted(m).minimal(), a.minimal());
  }
}

TEST(EpsLaurent, Examples) {
  EpsLaurent e = EpsLaurent::monomial(1);
  EXPECT_EQ(EpsLaurent::monomial(-1) * e, EpsLaurent(1));
  EXPECT_TRUE((EpsLaurent::monomial(2, 2) + EpsLaurent::monomial(2, -2)).terms().empty());
  EXPECT_EQ((EpsLaurent(1) + e).scale_by_power(-1), EpsLaurent::monomial(-1) + EpsLaurent(1));
}

TEST(EpsLaurent, Lowest) {
  auto [d1, c1] = (EpsLaurent::monomial(-2) + EpsLaurent::monomial(1, 3)).lowest();
  EXPECT_EQ(d1, -2);
  EXPECT_TRUE(c1.is_one());
  auto [d2, c2] = EpsLaurent(5).lowest();
  EXPECT_EQ(d2, 0);
  EXPECT_EQ(c2, Cyclotomic(5));
  Cyclotomic k = Cyclotomic(2) - z(4, 1);
  auto [d3, c3] = EpsLaurent::monomial(3, k).lowest();
  EXPECT_EQ(d3, 3);
  EXPECT_EQ(c3, k);
  EXPECT_THROW(EpsLaurent().lowest(), Error);
}

TEST(EpsLaurent, ShiftMovesLowestDegree) {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> ex(-4, 4);
  for (int trial = 0; trial < 50; ++trial) {
    EpsLaurent a;
    for (int i = 0; i < 3; ++i) a += EpsLaurent::monomial(ex(rng), oracle::random_cyclotomic(rng, 4));
    if (a.is_zero()) continue;
    const int k = ex(rng);
    EXPECT_EQ(a.scale_by_power(k).lowest().first, a.lowest().first + k);
    EXPECT_EQ(a.scale_by_power(k).lowest().second, a.lowest().second);
  }
}

TEST(ScalarIo, RoundTripAndGrammar) {
  Cyclotomic c = parse_cyclotomic("2*z12^5-1/3");
  EXPECT_EQ(c, Cyclotomic(2) * z(12, 5) - Cyclotomic(Rational(1, 3)));
  EXPECT_EQ(parse_cyclotomic(format_scalar(c)), c);
  EXPECT_EQ(parse_cyclotomic("z4^1*z4^1"), Cyclotomic(-1));
  EpsLaurent e = parse_eps("e^-2 + 3*e^1");
  EXPECT_EQ(e, EpsLaurent::monomial(-2) + EpsLaurent::monomial(1, 3));
  EXPECT_EQ(parse_eps(format_scalar(e)), e);
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    Cyclotomic r = oracle::random_cyclotomic(rng, 1 + trial % 13);
    EXPECT_EQ(parse_cyclotomic(format_scalar(r)), r);
  }
  EXPECT_THROW(parse_cyclotomic("z^"), Error);
  EXPECT_THROW(parse_cyclotomic(""), Error);
}
