#include "tenrank/acceptance.hpp"

#include <chrono>
#include <cstdio>
#include <random>

#include "tenrank/degeneration.hpp"
#include "tenrank/persistence.hpp"
#include "tenrank/rates.hpp"

namespace tenrank {
namespace {

// Collects check outcomes; remembers the first failure.
class Tally {
 public:
  void check(bool ok, const std::string& what) {
    ++total_;
    if (ok) return;
    ++failed_;
    if (first_.empty()) first_ = what;
  }
  template <class F>
  void run(const std::string& what, F&& f) {
    try {
      check(f(), what);
    } catch (const std::exception& e) {
      check(false, what + ": " + e.what());
    }
  }
  bool ok() const { return failed_ == 0 && total_ > 0; }
  std::string detail() const {
    std::string out = std::to_string(total_ - failed_) + "/" + std::to_string(total_) + " checks";
    if (!first_.empty()) out += "; first failure: " + first_;
    return out;
  }

 private:
  int total_ = 0;
  int failed_ = 0;
  std::string first_;
};

std::string tag(const char* name, int d, int n) { return std::string(name) + "(" + std::to_string(d) + "," + std::to_string(n) + ")"; }

bool exact_rank(const RankCertificate& c, int expected) { return c.exact() && c.lower == expected; }

int minimal_rank(int d, int n) { return (n - 1) * (d - 1) + 1; }

void criterion_w(Tally& t, std::vector<std::string>&) {
  for (int n = 2; n <= 8; ++n)
    t.run(tag("W", 2, n), [&] {
      CycTensor w = w_state(n);
      auto cert = pyramid_persistence(w);
      if (!cert) return false;
      RankCertificate rc = with_upper_bound(persistent_lower_bound(w, *cert), w, decompose_trivial(Family::W, 2, n));
      return exact_rank(rc, n) && *rc.upper == n;
    });
}

void criterion_families(Tally& t, std::vector<std::string>&) {
  for (int d = 2; d <= 5; ++d)
    for (int n = 3; n <= 6; ++n)
      for (Family f : {Family::L, Family::M, Family::N})
        t.run(tag(std::string(to_string(f)).c_str(), d, n), [&] {
          FamilySpec spec{f, d, n};
          CycTensor x = make_state(spec);
          auto cert = certify_persistence(x);
          if (!cert) return false;
          CycDecomposition dec = decompose_family(spec);
          RankCertificate rc = with_upper_bound(persistent_lower_bound(x, *cert), x, dec);
          return exact_rank(rc, minimal_rank(d, n)) && dec.size() == minimal_rank(d, n);
        });
  for (int n = 3; n <= 6; ++n)
    t.run(tag("Y", 3, n), [&] { return exact_rank(family_rank_certificate({Family::Y, 3, n}), 2 * n - 1); });
}

void criterion_kron_w(Tally& t, std::vector<std::string>&) {
  for (int n = 3; n <= 5; ++n)
    t.run("W kron W, n=" + std::to_string(n), [&] {
      CycTensor ww = kronecker_product(w_state(n), w_state(n));
      CycTensor m = m_state(4, n);
      if (!(ww == m)) return false;
      auto cert = certify_persistence(ww);
      if (!cert) return false;
      RankCertificate rc = with_upper_bound(persistent_lower_bound(ww, *cert), ww, decompose_m(4, n, Family::M));
      return exact_rank(rc, 3 * n - 2);
    });
}

void criterion_border(Tally& t, std::vector<std::string>&) {
  for (int d = 2; d <= 4; ++d)
    for (int n = 3; n <= 5; ++n) {
      const EpsDecomposition el = eps_decomposition(Family::L, d, n);
      const EpsLocalMap lm = canonical_chain_maps(ChainStep::L_TO_M, d, n);
      const EpsLocalMap mn = canonical_chain_maps(ChainStep::M_TO_N, d, n);
      auto exact_d = [&](const CycTensor& x, const EpsDecomposition& e) {
        BorderRankCertificate c = border_rank_certificate(x, e);
        return c.exact() && c.upper == d && c.lower == d;
      };
      t.run(tag("brk L", d, n), [&] { return exact_d(l_state(d, n), el); });
      t.run(tag("brk M'", d, n), [&] {
        // M'(2,n) = W(n) = L(2,n); the d-term M' formula needs d >= 3.
        return exact_d(mprime_state(d, n), d >= 3 ? eps_decomposition(Family::MPRIME, d, n) : el);
      });
      t.run(tag("brk N'", d, n), [&] { return exact_d(nprime_state(d, n), eps_decomposition(Family::NPRIME, d, n)); });
      t.run(tag("brk M via chain", d, n), [&] { return exact_d(m_state(d, n), map_decomposition(lm, el)); });
      t.run(tag("brk N via chain", d, n), [&] { return exact_d(n_state(d, n), map_decomposition(compose(mn, lm), el)); });
    }
}

void criterion_chain(Tally& t, std::vector<std::string>&) {
  for (int d = 2; d <= 4; ++d)
    for (int n = 3; n <= 5; ++n) {
      const EpsLocalMap lm = canonical_chain_maps(ChainStep::L_TO_M, d, n);
      const EpsLocalMap mn = canonical_chain_maps(ChainStep::M_TO_N, d, n);
      const EpsLocalMap gl = ghz_degeneration_from_eps(eps_decomposition(Family::L, d, n), n);
      t.run(tag("L->M", d, n), [&] { return verify_degeneration(l_state(d, n), lm, m_state(d, n)).verified; });
      t.run(tag("M->N", d, n), [&] { return verify_degeneration(m_state(d, n), mn, n_state(d, n)).verified; });
      t.run(tag("GHZ->L", d, n), [&] { return verify_degeneration(ghz(d, n), gl, l_state(d, n)).verified; });
      t.run(tag("GHZ->N composed", d, n), [&] { return verify_degeneration(ghz(d, n), compose(mn, compose(lm, gl)), n_state(d, n)).verified; });
    }
}

void criterion_rates(Tally& t, std::vector<std::string>&) {
  const std::vector<std::pair<Family, Family>> pairs = {{Family::L, Family::M},   {Family::M, Family::N},   {Family::L, Family::N},
                                                        {Family::GHZ, Family::L}, {Family::GHZ, Family::M}, {Family::GHZ, Family::N}};
  for (int d = 2; d <= 4; ++d)
    for (int n = 3; n <= 5; ++n)
      for (auto [s, g] : pairs)
        t.run(std::string(to_string(s)) + "->" + std::string(to_string(g)) + " " + tag("", d, n), [&] {
          RateCertificate c = rate_one_certificate(make_state({s, d, n}), make_state({g, d, n}), canonical_rate_maps(s, g, d, n));
          return c.rate_one;
        });
}

bool trace_mentions(const std::vector<std::string>& trace, const std::string& needle) {
  for (const auto& line : trace)
    if (line.find(needle) != std::string::npos) return true;
  return false;
}

void criterion_nonpersistence(Tally& t, std::vector<std::string>& log) {
  t.run("GHZ(2,3) not persistent", [&] { return !decide_persistence_qubits(ghz(2, 3)).persistent; });
  t.run("D(4,2) not persistent", [&] {
    QubitDecision dec = decide_persistence_qubits(dicke(4, 2));
    return !dec.persistent && trace_mentions(dec.trace, "tangle identity") && trace_mentions(dec.trace, "minor gcd");
  });
  t.run("NONSYM4(1,2,+) persistent with e=|1>", [&] {
    FamilySpec spec{Family::NONSYM4, 2, 4};
    spec.alpha = Rational(1);
    spec.beta = Rational(2);
    spec.sign = 1;
    const CycVector one{Cyclotomic(0), Cyclotomic(1)};
    QubitDecision dec = decide_persistence_qubits(make_state(spec), {one});
    log.push_back("NONSYM4(1,2,+): " + std::to_string(dec.valid_witnesses.size()) + " valid witness(es) among the candidates");
    return dec.persistent && dec.certificate && dec.certificate->witness_chain.front() == one && trace_mentions(dec.trace, "tangle identity") &&
           trace_mentions(dec.trace, "minor gcd");
  });
}

void criterion_sums(Tally& t, std::vector<std::string>&) {
  t.run("rk(W3 + W3) = 6", [&] {
    CycTensor w = w_state(3);
    auto cert = *pyramid_persistence(w);
    CycDecomposition wd = decompose_trivial(Family::W, 2, 3);
    RankCertificate wr = with_upper_bound(persistent_lower_bound(w, cert), w, wd);
    CycTensor q = direct_sum(w, w);
    RankCertificate qc = composite_lower_bound(q, {{2, 2}, {2, 2}, {2, 2}}, wr, cert);
    qc = with_upper_bound(qc, q, direct_sum(wd, wd));
    return exact_rank(qc, 6);
  });
  auto identity = [&](const std::string& name, const CycTensor& p, const CycDecomposition& dec, int d, int expected) {
    for (GhzProductMode mode : {GhzProductMode::Kron, GhzProductMode::Tensor})
      t.run(name + (mode == GhzProductMode::Kron ? " kron" : " tensor"), [&] {
        auto cert = certify_persistence(p);
        if (!cert) return false;
        RankCertificate pr = with_upper_bound(persistent_lower_bound(p, *cert), p, dec);
        return exact_rank(ghz_kron_cert(p, pr, *cert, dec, d, mode), expected);
      });
  };
  for (int d = 2; d <= 3; ++d)
    for (int n = 3; n <= 4; ++n) {
      const std::string g = "G(" + std::to_string(d) + "," + std::to_string(n) + ")";
      identity(g + " W", w_state(n), decompose_trivial(Family::W, 2, n), d, n * d);
      t.run("W kron W = M(4," + std::to_string(n) + ")", [&] { return kronecker_product(w_state(n), w_state(n)) == m_state(4, n); });
      identity(g + " W^kron2", m_state(4, n), decompose_m(4, n, Family::M), d, (3 * n - 2) * d);
      for (int d2 = 3; d2 <= 4; ++d2) {
        const int expected = d * ((n - 1) * d2 - n + 2);
        const std::string suffix = "(" + std::to_string(d2) + "," + std::to_string(n) + ")";
        identity(g + " L" + suffix, l_state(d2, n), decompose_l(d2, n), d, expected);
        identity(g + " M" + suffix, m_state(d2, n), decompose_m(d2, n, Family::M), d, expected);
        identity(g + " N" + suffix, n_state(d2, n), decompose_trivial(Family::N, d2, n), d, expected);
      }
    }
}

Cyclotomic random_cyclotomic(std::mt19937_64& rng, int order) {
  std::uniform_int_distribution<int> coeff(-4, 4), den(1, 3), pick(0, 2 * order);
  Cyclotomic x;
  for (int k = 0; k < 3; ++k) x += Cyclotomic(Rational(coeff(rng), den(rng))) * Cyclotomic::root(order, pick(rng));
  return x;
}

void criterion_properties(Tally& t, std::vector<std::string>&) {
  std::mt19937_64 rng(20240601);
  const int orders[] = {1, 3, 4, 5, 7, 8, 12};
  for (int trial = 0; trial < 60; ++trial) {
    const int oa = orders[trial % 7], ob = orders[(trial / 7) % 7], oc = orders[(trial * 3) % 7];
    Cyclotomic a = random_cyclotomic(rng, oa), b = random_cyclotomic(rng, ob), c = random_cyclotomic(rng, oc);
    t.run("field axioms trial " + std::to_string(trial), [&] {
      bool ok = (a + b) + c == a + (b + c) && (a * b) * c == a * (b * c) && a * (b + c) == a * b + a * c && a + b == b + a && a * b == b * a;
      if (!a.is_zero()) ok = ok && a * a.inverse() == Cyclotomic(1);
      return ok;
    });
  }

  // rk(a kron b) <= rk(a x b) <= rk(a) rk(b) through verified product decompositions.
  struct Named {
    std::string name;
    CycTensor t;
    CycDecomposition dec;
  };
  const int n = 3;
  std::vector<Named> pool = {{"W3", w_state(n), decompose_trivial(Family::W, 2, n)},
                             {"GHZ(2,3)", ghz(2, n), decompose_trivial(Family::GHZ, 2, n)},
                             {"L(3,3)", l_state(3, n), decompose_l(3, n)}};
  for (const auto& a : pool)
    for (const auto& b : pool)
      t.run("product chain " + a.name + " / " + b.name, [&] {
        CycDecomposition kd = kronecker_product(a.dec, b.dec), td = tensor_product(a.dec, b.dec);
        CycTensor k = kronecker_product(a.t, b.t), p = tensor_product(a.t, b.t);
        if (!verify_decomposition(k, kd) || !verify_decomposition(p, td)) return false;
        // Lower bounds from flattenings stay below the verified product counts.
        MultilinearProfile pk = multilinear_profile(k);
        int lower = *std::max_element(pk.ranks.begin(), pk.ranks.end());
        return lower <= kd.size() && kd.size() <= td.size() && td.size() <= a.dec.size() * b.dec.size();
      });

  // Flattening ranks never grow along a verified degeneration.
  auto monotone = [](const CycTensor& src, const CycTensor& tgt) {
    SchmidtProfile ps = schmidt_profile(src), pt = schmidt_profile(tgt);
    for (std::size_t i = 0; i < ps.size(); ++i)
      if (pt[i].second > ps[i].second) return false;
    return true;
  };
  for (int d = 2; d <= 4; ++d)
    for (int m = 3; m <= 5; ++m) {
      const EpsLocalMap lm = canonical_chain_maps(ChainStep::L_TO_M, d, m);
      const EpsLocalMap mn = canonical_chain_maps(ChainStep::M_TO_N, d, m);
      const EpsLocalMap gl = ghz_degeneration_from_eps(eps_decomposition(Family::L, d, m), m);
      t.run(tag("monotone L->M", d, m), [&] { return verify_degeneration(l_state(d, m), lm, m_state(d, m)).verified && monotone(l_state(d, m), m_state(d, m)); });
      t.run(tag("monotone M->N", d, m), [&] { return verify_degeneration(m_state(d, m), mn, n_state(d, m)).verified && monotone(m_state(d, m), n_state(d, m)); });
      t.run(tag("monotone GHZ->L", d, m), [&] { return verify_degeneration(ghz(d, m), gl, l_state(d, m)).verified && monotone(ghz(d, m), l_state(d, m)); });
    }

  // Rearrangement on every family decomposition in range.
  for (Family f : {Family::W, Family::L, Family::M, Family::MPRIME, Family::N, Family::NPRIME, Family::Y})
    for (int d = 2; d <= 5; ++d)
      for (int m = 2; m <= 6; ++m) {
        FamilySpec spec{f, d, m};
        spec = spec.normalized();
        if ((f == Family::W || f == Family::Y) && d != spec.d) continue;
        t.run("rearrange " + spec.str(), [&] {
          CycTensor x = make_state(spec);
          auto cert = certify_family_persistence(spec);
          if (!cert) return false;
          CycDecomposition dec = decompose_family(spec);
          std::vector<int> perm = rearrange_decomposition(x, dec, *cert, family_frame(spec));
          CycDecomposition permuted = dec;
          for (std::size_t i = 0; i < perm.size(); ++i) permuted.terms[i] = dec.terms[static_cast<std::size_t>(perm[i])];
          return has_basis_layout(x, permuted);
        });
      }

  // Block pyramidal support checker.
  const std::vector<std::pair<std::string, std::pair<CycTensor, CycTensor>>> sums = {
      {"W3+W3", {w_state(3), w_state(3)}}, {"GHZ(2,3)+W3", {ghz(2, 3), w_state(3)}}, {"L(3,3)+N(3,3)", {l_state(3, 3), n_state(3, 3)}},
      {"W4+L(2,4)", {w_state(4), l_state(2, 4)}}};
  for (const auto& [name, pair] : sums) {
    const auto& [a, b] = pair;
    BlockSplit split;
    for (int i = 0; i < a.arity(); ++i) split.emplace_back(a.shape().dim(i), b.shape().dim(i));
    CycTensor q = direct_sum(a, b);
    t.run("block pyramidal accepts " + name, [&] { return is_block_pyramidal(q, split); });
    // Mutation: one entry in U_1 x V_2 x U_3 ... with last index in U_n.
    std::vector<int> idx(static_cast<std::size_t>(a.arity()), 0);
    idx[1] = split[1].first;
    CycTensor mutated = q + CycTensor::from_entries(q.shape(), std::vector<std::pair<std::vector<int>, Cyclotomic>>{{idx, Cyclotomic(1)}});
    t.run("block pyramidal rejects mutated " + name, [&] {
      std::string why;
      return !is_block_pyramidal(mutated, split, &why) && !why.empty();
    });
    // Entries anywhere with last index in V_n are allowed.
    std::vector<int> ok_idx(static_cast<std::size_t>(a.arity()), 0);
    ok_idx[1] = split[1].first;
    ok_idx.back() = split.back().first;
    CycTensor extended = q + CycTensor::from_entries(q.shape(), std::vector<std::pair<std::vector<int>, Cyclotomic>>{{ok_idx, Cyclotomic(1)}});
    t.run("block pyramidal accepts step-region entry " + name, [&] { return is_block_pyramidal(extended, split); });
  }
}

void criterion_probe(Tally& t, std::vector<std::string>& log) {
  auto probe = [&](const std::string& name, const CycTensor& x) {
    t.run("probe " + name + " ran", [&] {
      std::string why;
      bool ok = pyramid_persistence(x, &why).has_value();
      log.push_back("probe " + name + ": pyramid " + (ok ? "applies" : "does not apply (" + why + ")") + "; evidence only, not a certificate");
      return true;
    });
  };
  for (int n = 3; n <= 5; ++n) probe("W(" + std::to_string(n) + ") kron W(" + std::to_string(n) + ")", kronecker_product(w_state(n), w_state(n)));
  for (int n = 3; n <= 4; ++n) probe("L(2," + std::to_string(n) + ") kron L(3," + std::to_string(n) + ")", kronecker_product(l_state(2, n), l_state(3, n)));
}

struct Criterion {
  int id;
  const char* title;
  void (*body)(Tally&, std::vector<std::string>&);
};

const Criterion kCriteria[] = {
    {1, "rk(W(n)) = n for n = 2..8", criterion_w},
    {2, "rk(L) = rk(M) = rk(N) = (n-1)(d-1)+1, d = 2..5, n = 3..6; rk(Y(n)) = 2n-1", criterion_families},
    {3, "W(n) kron W(n) = M(4,n) with rank 3n-2, n = 3..5", criterion_kron_w},
    {4, "border rank d for L, M', N', M, N, d = 2..4, n = 3..5", criterion_border},
    {5, "degeneration chain L -> M -> N, GHZ -> L, GHZ -> N", criterion_chain},
    {6, "rate one for L->M, M->N, L->N, GHZ->L, GHZ->M, GHZ->N", criterion_rates},
    {7, "qubit non-persistence examples and the nonsymmetric persistent tensor", criterion_nonpersistence},
    {8, "direct-sum additivity and GHZ product multiplicativity", criterion_sums},
    {9, "property suites", criterion_properties},
    {10, "Kronecker persistence probe (non-assertive)", criterion_probe},
};

}  // namespace

std::vector<CriterionResult> run_acceptance(const std::vector<int>& only) {
  std::vector<CriterionResult> out;
  for (const auto& c : kCriteria) {
    if (!only.empty() && std::find(only.begin(), only.end(), c.id) == only.end()) continue;
    CriterionResult r;
    r.id = c.id;
    r.title = c.title;
    auto start = std::chrono::steady_clock::now();
    Tally tally;
    try {
      c.body(tally, r.log);
    } catch (const std::exception& e) {
      tally.check(false, std::string("setup: ") + e.what());
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    r.pass = tally.ok();
    r.detail = tally.detail();
    out.push_back(std::move(r));
  }
  return out;
}

std::string format_result(const CriterionResult& r) {
  char secs[32];
  std::snprintf(secs, sizeof secs, "%.2fs", r.seconds);
  return std::string(r.pass ? "[PASS] " : "[FAIL] ") + std::to_string(r.id) + " " + r.title + " (" + r.detail + ", " + secs + ")";
}

}  // namespace tenrank
