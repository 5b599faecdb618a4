#include <gtest/gtest.h>

#include "oracles.hpp"
#include "tenrank/decomposition.hpp"
#include "tenrank/families.hpp"
#include "tenrank/persistence.hpp"

using namespace tenrank;

namespace {

int minimal_rank(int d, int n) { return (n - 1) * (d - 1) + 1; }

// Hyperdeterminant as the discriminant of det(A0 + x A1), A_i the slices
// along the first factor. Shares nothing with the Cayley expansion.
Cyclotomic discriminant_oracle(const CycTensor& t) {
  auto a = [&](int i, int j, int k) { return t.at({i, j, k}); };
  Cyclotomic c0 = a(0, 0, 0) * a(0, 1, 1) - a(0, 0, 1) * a(0, 1, 0);
  Cyclotomic c2 = a(1, 0, 0) * a(1, 1, 1) - a(1, 0, 1) * a(1, 1, 0);
  Cyclotomic c1 = a(0, 0, 0) * a(1, 1, 1) + a(1, 0, 0) * a(0, 1, 1) - a(0, 0, 1) * a(1, 1, 0) - a(1, 0, 1) * a(0, 1, 0);
  return c1 * c1 - Cyclotomic(4) * c0 * c2;
}

CycTensor nonsym4(int alpha, int beta, int sign) {
  FamilySpec s{Family::NONSYM4, 2, 4};
  s.alpha = alpha;
  s.beta = beta;
  s.sign = sign;
  return make_state(s);
}

bool vectors_form_basis(const CycDecomposition& dec, const std::vector<int>& perm, int factor, int from, int count) {
  std::vector<std::vector<Cyclotomic>> rows;
  for (int k = from; k < from + count; ++k) rows.push_back(dec.terms[static_cast<std::size_t>(perm[static_cast<std::size_t>(k)])].vectors[static_cast<std::size_t>(factor)]);
  return rank_of_vectors(rows) == count;
}

}  // namespace

TEST(Persistence, PyramidExamples) {
  for (int d = 2; d <= 5; ++d)
    for (int n = 3; n <= 6; ++n) {
      for (const CycTensor& t : {l_state(d, n), m_state(d, n), n_state(d, n)}) {
        auto cert = pyramid_persistence(t);
        ASSERT_TRUE(cert) << d << " " << n;
        EXPECT_EQ(static_cast<int>(cert->witness_chain.size()), n - 2);
        EXPECT_EQ(cert->method, PersistenceMethod::PYRAMID);
      }
    }
  std::string why;
  EXPECT_FALSE(pyramid_persistence(ghz(2, 3), &why));
  EXPECT_FALSE(why.empty());
  for (int n = 3; n <= 8; ++n) EXPECT_TRUE(pyramid_persistence(w_state(n)));
}

TEST(Persistence, TangleExamples) {
  EXPECT_FALSE(tangle3(ghz(2, 3)).is_zero());
  EXPECT_EQ(tangle3(ghz(2, 3)), discriminant_oracle(ghz(2, 3)));
  EXPECT_TRUE(tangle3(w_state(3)).is_zero());
  EXPECT_TRUE(discriminant_oracle(w_state(3)).is_zero());
  EXPECT_TRUE(tangle3(CycTensor::from_entries(Shape::uniform(2, 3), {{{0, 0, 0}, 1}})).is_zero());
  EXPECT_THROW(tangle3(l_state(3, 3)), Error);
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 50; ++trial) {
    CycTensor t = oracle::random_tensor(rng, Shape::uniform(2, 3), 0.7);
    EXPECT_EQ(tangle3(t), discriminant_oracle(t));
  }
}

TEST(Persistence, TangleCovariance) {
  std::mt19937_64 rng(37);
  for (int trial = 0; trial < 40; ++trial) {
    CycTensor t = oracle::random_tensor(rng, Shape::uniform(2, 3), 0.6);
    CycLocalMap m;
    Cyclotomic scale(1);
    for (int i = 0; i < 3; ++i) {
      m.push_back(oracle::random_matrix(rng, 2, 2));
      Cyclotomic det = determinant(m.back());
      scale *= det * det;
    }
    CycTensor u = slocc_apply(t, m);
    EXPECT_EQ(tangle3(u), scale * tangle3(t));
    if (!scale.is_zero()) {
      EXPECT_EQ(tangle3(u).is_zero(), tangle3(t).is_zero());
    }
  }
}

TEST(Persistence, QubitDecisionExamples) {
  QubitDecision g = decide_persistence_qubits(ghz(2, 3));
  EXPECT_FALSE(g.persistent);
  EXPECT_TRUE(g.structural);
  QubitDecision d42 = decide_persistence_qubits(dicke(4, 2));
  EXPECT_FALSE(d42.persistent);
  EXPECT_TRUE(d42.structural);
  CycVector e1{Cyclotomic(0), Cyclotomic(1)};
  QubitDecision ns = decide_persistence_qubits(nonsym4(1, 2, 1), {e1});
  ASSERT_TRUE(ns.persistent);
  ASSERT_TRUE(ns.certificate);
  EXPECT_EQ(ns.certificate->witness_chain.front(), e1);
  EXPECT_EQ(ns.certificate->witness_chain.size(), 2u);
  std::string all;
  for (const auto& line : ns.trace) all += line + "\n";
  EXPECT_NE(all.find("tangle identity"), std::string::npos);
  EXPECT_NE(all.find("minor gcd"), std::string::npos);
  EXPECT_TRUE(decide_persistence_qubits(w_state(3)).persistent);
  EXPECT_TRUE(decide_persistence_qubits(w_state(4)).persistent);
  EXPECT_FALSE(decide_persistence_qubits(ghz(2, 4)).persistent);
  EXPECT_TRUE(decide_persistence_qubits(w_state(2)).persistent);
  EXPECT_FALSE(decide_persistence_qubits(CycTensor::from_entries(Shape{2, 2}, {{{0, 0}, 1}})).persistent);
  EXPECT_THROW(decide_persistence_qubits(w_state(5)), Error);
  EXPECT_THROW(decide_persistence_qubits(l_state(3, 3)), Error);
}

TEST(Persistence, PyramidAgreesWithQubitDecision) {
  std::vector<CycTensor> corpus{w_state(3), w_state(4), ghz(2, 3), ghz(2, 4), dicke(4, 2), nonsym4(1, 2, 1), nonsym4(1, 2, -1), dicke(3, 2)};
  std::mt19937_64 rng(41);
  std::uniform_int_distribution<int> coef(-3, 3);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 3 + trial % 2;
    std::vector<std::pair<std::vector<int>, Cyclotomic>> e;
    e.emplace_back(std::vector<int>(static_cast<std::size_t>(n), 0), Cyclotomic(coef(rng)));
    for (int i = 0; i < n; ++i) {
      std::vector<int> idx(static_cast<std::size_t>(n), 0);
      idx[static_cast<std::size_t>(i)] = 1;
      int c = coef(rng);
      e.emplace_back(idx, Cyclotomic(c == 0 && trial % 3 ? 1 : c));
    }
    corpus.push_back(CycTensor::from_entries(Shape::uniform(2, n), e));
  }
  for (const auto& t : corpus) {
    if (t.is_zero()) continue;
    if (pyramid_persistence(t)) {
      EXPECT_TRUE(decide_persistence_qubits(t).persistent);
    }
    if (!decide_persistence_qubits(t).persistent) {
      EXPECT_FALSE(pyramid_persistence(t));
    }
  }
}

TEST(Persistence, Screening) {
  ScreenResult l44 = screen_persistence(l_state(4, 4), 20, 1);
  EXPECT_EQ(l44.outcome, ScreenOutcome::LikelyPersistent);
  ASSERT_TRUE(l44.certificate);
  EXPECT_FALSE(l44.certificate->conclusive);
  EXPECT_GT(l44.sampled_covectors, 0);
  for (std::uint64_t seed : {1u, 2u, 3u}) EXPECT_NE(screen_persistence(ghz(3, 4), 20, seed).outcome, ScreenOutcome::LikelyPersistent);
  EXPECT_EQ(screen_persistence(CycTensor(Shape::uniform(2, 3)), 5, 1).outcome, ScreenOutcome::NotPersistentEvidence);
  // same seed, same answer
  EXPECT_EQ(screen_persistence(l_state(3, 5), 10, 9).sampled_covectors, screen_persistence(l_state(3, 5), 10, 9).sampled_covectors);
}

TEST(Persistence, LowerBoundExamples) {
  CycTensor w8 = w_state(8);
  EXPECT_EQ(persistent_lower_bound(w8, *pyramid_persistence(w8)).lower, 8);
  CycTensor l45 = l_state(4, 5);
  EXPECT_EQ(persistent_lower_bound(l45, *pyramid_persistence(l45)).lower, 13);
  for (int n = 3; n <= 6; ++n) {
    CycTensor y = make_state({Family::Y, 3, n});
    EXPECT_EQ(persistent_lower_bound(y, *pyramid_persistence(y)).lower, 2 * n - 1);
  }
  ScreenResult s = screen_persistence(l_state(3, 3), 5, 1);
  ASSERT_TRUE(s.certificate);
  EXPECT_THROW(persistent_lower_bound(l_state(3, 3), *s.certificate), Error);
  try {
    persistent_lower_bound(m_state(4, 3), *pyramid_persistence(l_state(4, 3)));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::CertificateSubjectMismatch);
  }
}

TEST(Persistence, CertificateSandwich) {
  for (Family f : {Family::L, Family::M, Family::MPRIME, Family::N, Family::NPRIME})
    for (int d = 2; d <= 5; ++d)
      for (int n = 3; n <= 6; ++n) {
        FamilySpec s{f, d, n};
        RankCertificate rc = family_rank_certificate(s);
        ASSERT_TRUE(rc.upper) << s.str();
        EXPECT_LE(rc.lower, *rc.upper);
        EXPECT_TRUE(rc.exact()) << s.str();
        EXPECT_EQ(rc.lower, minimal_rank(d, n));
      }
  CycDecomposition bad = decompose_trivial(Family::W, 2, 3);
  bad.terms.pop_back();
  CycTensor w3 = w_state(3);
  EXPECT_THROW(with_upper_bound(persistent_lower_bound(w3, *pyramid_persistence(w3)), w3, bad), Error);
}

TEST(Persistence, CompositeLowerBound) {
  CycTensor w = w_state(3);
  auto cert = *pyramid_persistence(w);
  CycDecomposition wd = decompose_trivial(Family::W, 2, 3);
  RankCertificate wr = with_upper_bound(persistent_lower_bound(w, cert), w, wd);
  CycTensor q = direct_sum(w, w);
  RankCertificate qc = with_upper_bound(composite_lower_bound(q, {{2, 2}, {2, 2}, {2, 2}}, wr, cert), q, direct_sum(wd, wd));
  EXPECT_EQ(qc.lower, 6);
  EXPECT_TRUE(qc.exact());

  CycTensor g = ghz(2, 3);
  RankCertificate gr = flattening_rank_certificate(g, decompose_trivial(Family::GHZ, 2, 3));
  ASSERT_TRUE(gr.exact());
  CycTensor gw = direct_sum(g, w);
  EXPECT_EQ(composite_lower_bound(gw, {{2, 2}, {2, 2}, {2, 2}}, gr, cert).lower, 5);

  std::vector<int> idx{0, 2, 0};
  CycTensor bad = gw + CycTensor::from_entries(gw.shape(), {{idx, Cyclotomic(1)}});
  std::string why;
  EXPECT_FALSE(is_block_pyramidal(bad, {{2, 2}, {2, 2}, {2, 2}}, &why));
  EXPECT_FALSE(why.empty());
  try {
    composite_lower_bound(bad, {{2, 2}, {2, 2}, {2, 2}}, gr, cert);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotBlockPyramidal);
  }
}

TEST(Persistence, CompositeMatchesAdditivity) {
  // lower(T + P) = lower(T) + rk(P) for minimal-rank persistent P
  std::vector<std::pair<CycTensor, CycDecomposition>> heads{{ghz(3, 3), decompose_trivial(Family::GHZ, 3, 3)},
                                                            {w_state(3), decompose_trivial(Family::W, 2, 3)}};
  for (const auto& [t, td] : heads)
    for (int d = 2; d <= 4; ++d) {
      CycTensor p = l_state(d, 3);
      auto pc = *pyramid_persistence(p);
      RankCertificate tr = flattening_rank_certificate(t, td);
      if (!tr.exact()) tr = with_upper_bound(persistent_lower_bound(t, *pyramid_persistence(t)), t, td);
      ASSERT_TRUE(tr.exact());
      BlockSplit split;
      for (int i = 0; i < 3; ++i) split.emplace_back(t.shape().dim(i), d);
      RankCertificate q = composite_lower_bound(direct_sum(t, p), split, tr, pc);
      EXPECT_EQ(q.lower, tr.lower + minimal_rank(d, 3));
    }
}

TEST(Persistence, GhzKronIdentities) {
  auto check = [](const FamilySpec& ps, int d, GhzProductMode mode, int expected) {
    CycTensor p = make_state(ps);
    auto cert = certify_family_persistence(ps);
    ASSERT_TRUE(cert);
    CycDecomposition dec = decompose_family(ps);
    RankCertificate pr = with_upper_bound(persistent_lower_bound(p, *cert), p, dec);
    RankCertificate rc = ghz_kron_cert(p, pr, *cert, dec, d, mode);
    EXPECT_TRUE(rc.exact()) << ps.str();
    EXPECT_EQ(rc.lower, expected) << ps.str() << " d=" << d;
  };
  for (int d = 2; d <= 3; ++d)
    for (int n = 3; n <= 4; ++n) {
      check({Family::W, 2, n}, d, GhzProductMode::Kron, n * d);
      check({Family::M, 4, n}, d, GhzProductMode::Kron, (3 * n - 2) * d);
      for (int d2 = 3; d2 <= 4; ++d2) check({Family::L, d2, n}, d, GhzProductMode::Tensor, d * ((n - 1) * d2 - n + 2));
    }
  CycTensor w = w_state(3);
  auto cert = *pyramid_persistence(w);
  RankCertificate loose = persistent_lower_bound(w, cert);
  loose.lower = 2;
  loose.upper = 3;
  EXPECT_THROW(ghz_kron_cert(w, loose, cert, decompose_trivial(Family::W, 2, 3), 2, GhzProductMode::Kron), Error);
}

TEST(Persistence, Rearrangement) {
  CycTensor l33 = l_state(3, 3);
  CycDecomposition dl = decompose_l(3, 3);
  auto perm = rearrange_decomposition(l33, dl, *pyramid_persistence(l33));
  ASSERT_EQ(perm.size(), 5u);
  EXPECT_TRUE(vectors_form_basis(dl, perm, 0, 0, 3));
  EXPECT_TRUE(vectors_form_basis(dl, perm, 1, 2, 3));

  for (int n = 3; n <= 6; ++n) {
    CycTensor w = w_state(n);
    CycDecomposition dw = decompose_trivial(Family::W, 2, n);
    auto pw = rearrange_decomposition(w, dw, *pyramid_persistence(w));
    for (int j = 0; j + 1 < n; ++j) EXPECT_TRUE(vectors_form_basis(dw, pw, j, j, 2));
  }

  CycTensor mat = l_state(3, 2);
  CycDecomposition dm = decompose_support(mat);
  std::reverse(dm.terms.begin(), dm.terms.end());
  auto cm = certify_persistence(mat);
  ASSERT_TRUE(cm);
  auto pm = rearrange_decomposition(mat, dm, *cm);
  EXPECT_TRUE(vectors_form_basis(dm, pm, 0, 0, 3));
}

TEST(Persistence, RearrangementOnEveryFamily) {
  for (Family f : {Family::L, Family::M, Family::MPRIME, Family::N, Family::NPRIME})
    for (int d = 2; d <= 4; ++d)
      for (int n = 3; n <= 5; ++n) {
        FamilySpec s{f, d, n};
        CycTensor p = make_state(s);
        CycDecomposition dec = decompose_family(s);
        auto perm = rearrange_decomposition(p, dec, *certify_family_persistence(s), family_frame(s));
        CycDecomposition reordered = dec;
        for (std::size_t k = 0; k < perm.size(); ++k) reordered.terms[k] = dec.terms[static_cast<std::size_t>(perm[k])];
        EXPECT_TRUE(has_basis_layout(p, reordered)) << s.str();
      }
}

TEST(Persistence, TransportedCertificate) {
  for (int d = 4; d <= 5; ++d) {
    CycTensor m = m_state(d, 4);
    CycLocalMap frame = uniform_map(m_basis_change(d), 4);
    auto moved = transport_certificate(*pyramid_persistence(m), m, frame);
    CycTensor mp = mprime_state(d, 4);
    EXPECT_EQ(persistent_lower_bound(mp, moved).lower, minimal_rank(d, 4));
  }
}
