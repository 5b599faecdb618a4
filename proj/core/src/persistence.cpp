#include "tenrank/persistence.hpp"

#include <algorithm>
#include <random>

#include "tenrank/digest.hpp"

namespace tenrank {

std::string_view to_string(PersistenceMethod m) {
  switch (m) {
    case PersistenceMethod::PYRAMID: return "PYRAMID";
    case PersistenceMethod::EXACT_QUBIT: return "EXACT_QUBIT";
    case PersistenceMethod::SCREENED: return "SCREENED";
  }
  return "?";
}

std::string_view to_string(ScreenOutcome o) {
  switch (o) {
    case ScreenOutcome::LikelyPersistent: return "LikelyPersistent";
    case ScreenOutcome::Inconclusive: return "Inconclusive";
    case ScreenOutcome::NotPersistentEvidence: return "NotPersistentEvidence";
  }
  return "?";
}

std::optional<PersistenceCertificate> pyramid_persistence(const CycTensor& t, std::string* why) {
  auto reject = [&](const std::string& reason) -> std::optional<PersistenceCertificate> {
    if (why) *why = reason;
    return std::nullopt;
  };
  const Shape& shape = t.shape();
  const int n = shape.arity();
  if (n < 2) return reject("arity below 2");
  if (!shape.is_uniform()) return reject("local dimensions differ");
  const int d = shape.dim(0);
  for (const auto& [k, v] : t.entries()) {
    int sum = 0;
    for (int i = 0; i < n; ++i) sum += shape.digit(k, i);
    if (sum >= d) return reject("support entry " + shape.str() + " index with digit sum " + std::to_string(sum) + " >= " + std::to_string(d));
  }
  for (int slot = 0; slot <= n - 2; ++slot)
    for (int j = 0; j < d; ++j) {
      Index lin = static_cast<Index>(j) * shape.stride(slot) + static_cast<Index>(d - j - 1) * shape.stride(n - 1);
      if (t.at_linear(lin).is_zero())
        return reject("zero coefficient at pattern position (j=" + std::to_string(j) + " at slot " + std::to_string(slot) + ")");
    }
  PersistenceCertificate cert;
  cert.method = PersistenceMethod::PYRAMID;
  CycVector e0(static_cast<std::size_t>(d));
  e0[0] = Cyclotomic(1);
  cert.witness_chain.assign(static_cast<std::size_t>(n - 2), e0);
  cert.subject = digest(t);
  cert.diagnostics.push_back("support within digit sum < " + std::to_string(d));
  cert.diagnostics.push_back("all " + std::to_string((n - 1) * d) + " pattern coefficients nonzero");
  cert.diagnostics.push_back("witness |0> at every level");
  return cert;
}

PersistenceCertificate transport_certificate(const PersistenceCertificate& cert, const CycTensor& t, const CycLocalMap& maps) {
  if (cert.subject != digest(t)) throw Error(ErrorCode::CertificateSubjectMismatch, "certificate does not describe the source tensor");
  if (static_cast<int>(maps.size()) != t.arity()) throw Error(ErrorCode::DimMismatch, "local map has the wrong number of factors");
  for (const auto& a : maps) {
    if (a.rows() != a.cols()) throw Error(ErrorCode::DimMismatch, "transport needs square maps");
    if (determinant(a).is_zero()) throw Error(ErrorCode::DivisionByZero, "transport needs invertible maps");
  }
  PersistenceCertificate out = cert;
  for (std::size_t k = 0; k < out.witness_chain.size(); ++k) out.witness_chain[k] = maps[k].apply(out.witness_chain[k]);
  out.subject = digest(slocc_apply(t, maps));
  out.diagnostics.push_back("transported through an invertible local map from subject " + digest_hex(cert.subject));
  return out;
}

namespace {

CycVector dual_covector(const CycVector& e) {
  CycVector f(e.size());
  for (std::size_t j = 0; j < e.size(); ++j)
    if (!e[j].is_zero()) {
      f[j] = e[j].inverse();
      return f;
    }
  throw Error(ErrorCode::BadSpec, "zero witness vector");
}

Cyclotomic pair(const CycVector& f, const CycVector& e) {
  Cyclotomic s;
  for (std::size_t j = 0; j < f.size(); ++j)
    if (!f[j].is_zero() && !e[j].is_zero()) s += f[j] * e[j];
  return s;
}

class Screener {
 public:
  Screener(int trials, std::uint64_t seed) : trials_(trials), rng_(seed) {}

  struct Level {
    ScreenOutcome outcome;
    std::vector<CycVector> chain;
    bool direct_failure = false;  // a sampled contraction was not 1-concise
  };

  Level run(const CycTensor& t, int depth, std::vector<std::string>& trace) {
    if (t.is_zero()) return {ScreenOutcome::NotPersistentEvidence, {}, true};
    const int d = t.shape().dim(0);
    if (mode_rank(t, 0) != d) return {ScreenOutcome::NotPersistentEvidence, {}, true};
    if (t.arity() == 2) return {ScreenOutcome::LikelyPersistent, {}, false};
    const int samples = std::max(1, trials_ >> depth);
    std::vector<CycVector> candidates;
    for (int j = 0; j < d; ++j) {
      CycVector e(static_cast<std::size_t>(d));
      e[static_cast<std::size_t>(j)] = Cyclotomic(1);
      candidates.push_back(std::move(e));
    }
    candidates.emplace_back(static_cast<std::size_t>(d), Cyclotomic(1));
    bool any_direct = false;
    bool any_deep = false;
    for (std::size_t c = 0; c < candidates.size(); ++c) {
      const CycVector& e = candidates[c];
      CycVector f0 = dual_covector(e);
      bool ok = true;
      std::vector<CycVector> sub_chain;
      for (int s = 0; s < samples && ok; ++s) {
        CycVector f = f0;
        if (s > 0) {
          CycVector g(static_cast<std::size_t>(d));
          for (auto& x : g) x = Cyclotomic(Rational(coeff_(rng_), denom_(rng_)));
          Cyclotomic shift = Cyclotomic(1) - pair(g, e);
          for (std::size_t j = 0; j < f.size(); ++j) f[j] = g[j] + shift * f0[j];
        }
        ++sampled_;
        Level sub = run(contract(t, 0, f), depth + 1, trace);
        if (sub.outcome != ScreenOutcome::LikelyPersistent) {
          ok = false;
          (sub.direct_failure ? any_direct : any_deep) = true;
        } else if (s == 0) {
          sub_chain = sub.chain;
        }
      }
      if (depth == 0)
        trace.push_back("candidate " + std::to_string(c) + (ok ? " survived " : " failed after ") + std::to_string(samples) + " sampled covector(s)");
      if (ok) {
        std::vector<CycVector> chain{e};
        chain.insert(chain.end(), sub_chain.begin(), sub_chain.end());
        return {ScreenOutcome::LikelyPersistent, chain, false};
      }
    }
    if (any_deep && !any_direct) return {ScreenOutcome::Inconclusive, {}, false};
    return {ScreenOutcome::NotPersistentEvidence, {}, false};
  }

  int sampled() const { return sampled_; }

 private:
  int trials_;
  std::mt19937_64 rng_;
  std::uniform_int_distribution<std::int64_t> coeff_{-3, 3};
  std::uniform_int_distribution<std::int64_t> denom_{1, 3};
  int sampled_ = 0;
};

}  // namespace

ScreenResult screen_persistence(const CycTensor& t, int trials, std::uint64_t seed) {
  ScreenResult out;
  Screener screener(std::max(1, trials), seed);
  Screener::Level top = screener.run(t, 0, out.trace);
  out.outcome = top.outcome;
  out.sampled_covectors = screener.sampled();
  out.trace.push_back("sampled " + std::to_string(out.sampled_covectors) + " covectors with seed " + std::to_string(seed));
  if (top.outcome == ScreenOutcome::LikelyPersistent) {
    PersistenceCertificate cert;
    cert.method = PersistenceMethod::SCREENED;
    cert.witness_chain = top.chain;
    cert.subject = digest(t);
    cert.conclusive = false;
    cert.sampled_covectors = out.sampled_covectors;
    cert.diagnostics.push_back("heuristic screening; persistence quantifies over all covectors off a subspace and is not proved");
    out.certificate = std::move(cert);
  }
  return out;
}

std::optional<PersistenceCertificate> certify_persistence(const CycTensor& t) {
  if (auto cert = pyramid_persistence(t)) return cert;
  const auto& dims = t.shape().dims();
  bool qubits = std::all_of(dims.begin(), dims.end(), [](int d) { return d == 2; });
  if (qubits && t.arity() >= 2 && t.arity() <= 4) {
    QubitDecision dec = decide_persistence_qubits(t);
    if (dec.persistent) return dec.certificate;
  }
  return std::nullopt;
}

}  // namespace tenrank
