#include <algorithm>
#include <array>

#include "tenrank/digest.hpp"
#include "tenrank/persistence.hpp"
#include "tenrank/poly.hpp"
#include "tenrank/scalar_io.hpp"

namespace tenrank {
namespace {

// Cayley's 2x2x2 hyperdeterminant, a[4i + 2j + k] = t_{ijk}.
template <class R>
R hyperdet(const std::array<R, 8>& a) {
  auto sq = [](const R& x) { return x * x; };
  R plus = sq(a[0]) * sq(a[7]) + sq(a[1]) * sq(a[6]) + sq(a[2]) * sq(a[5]) + sq(a[4]) * sq(a[3]);
  R minus = a[0] * a[1] * a[6] * a[7] + a[0] * a[2] * a[5] * a[7] + a[0] * a[4] * a[3] * a[7] + a[1] * a[2] * a[5] * a[6] +
            a[1] * a[4] * a[3] * a[6] + a[2] * a[4] * a[3] * a[5];
  R four = a[0] * a[3] * a[5] * a[6] + a[1] * a[2] * a[4] * a[7];
  return plus - R(2) * minus + R(4) * four;
}

std::array<Cyclotomic, 8> entries3(const CycTensor& t) {
  std::array<Cyclotomic, 8> a;
  for (const auto& [k, v] : t.entries()) a[k] = v;
  return a;
}

CycVector basis_vector(int j) {
  CycVector e(2);
  e[static_cast<std::size_t>(j)] = Cyclotomic(1);
  return e;
}

std::string vec_str(const CycVector& v) {
  std::string out = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ",";
    out += format_scalar(v[i]);
  }
  return out + ")";
}

// Coefficients (a, b, c) of det(f0 A0 + f1 A1) = a f0^2 + b f0 f1 + c f1^2.
std::array<Cyclotomic, 3> slice_form(const std::array<Cyclotomic, 8>& x) {
  // A0 = x[0..3], A1 = x[4..7], each [[m00, m01], [m10, m11]].
  Cyclotomic a = x[0] * x[3] - x[1] * x[2];
  Cyclotomic c = x[4] * x[7] - x[5] * x[6];
  Cyclotomic b = x[0] * x[7] + x[4] * x[3] - x[1] * x[6] - x[5] * x[2];
  return {a, b, c};
}

using PolyCube = std::array<Poly, 8>;

// Mode-k flattening of a 2x2x2 cube is 2x4; returns the gcd of its six 2x2 minors.
Poly minor_gcd(const PolyCube& c, int mode) {
  std::array<std::array<Poly, 4>, 2> m;
  for (int idx = 0; idx < 8; ++idx) {
    int i = (idx >> 2) & 1, j = (idx >> 1) & 1, k = idx & 1;
    int row = mode == 0 ? i : mode == 1 ? j : k;
    int col = mode == 0 ? 2 * j + k : mode == 1 ? 2 * i + k : 2 * i + j;
    m[static_cast<std::size_t>(row)][static_cast<std::size_t>(col)] = c[static_cast<std::size_t>(idx)];
  }
  Poly g;
  for (int p = 0; p < 4; ++p)
    for (int q = p + 1; q < 4; ++q) g = gcd(g, m[0][static_cast<std::size_t>(p)] * m[1][static_cast<std::size_t>(q)] - m[0][static_cast<std::size_t>(q)] * m[1][static_cast<std::size_t>(p)]);
  return g;
}

// C(t) = <0|P + t <1|P for a four-qubit P.
PolyCube pencil(const CycTensor& p) {
  PolyCube c;
  for (const auto& [k, v] : p.entries()) {
    std::size_t rest = static_cast<std::size_t>(k & 7);
    if ((k >> 3) & 1) c[rest] += Poly(std::vector<Cyclotomic>{Cyclotomic(0), v});
    else c[rest] += Poly(v);
  }
  return c;
}

struct ThreeQubit {
  bool persistent = false;
  CycVector witness;
  std::vector<std::string> trace;
};

ThreeQubit decide3(const CycTensor& t) {
  ThreeQubit out;
  MultilinearProfile prof = multilinear_profile(t);
  auto x = entries3(t);
  auto [a, b, c] = slice_form(x);
  Cyclotomic tangle = hyperdet(x);
  out.trace.push_back("mode ranks (" + std::to_string(prof.ranks[0]) + "," + std::to_string(prof.ranks[1]) + "," + std::to_string(prof.ranks[2]) + ")");
  out.trace.push_back("tangle = " + format_scalar(tangle));
  out.trace.push_back("slice determinant form a=" + format_scalar(a) + " b=" + format_scalar(b) + " c=" + format_scalar(c));
  if (!prof.concise[0]) {
    out.trace.push_back("not 1-concise");
    return out;
  }
  if (a.is_zero() && b.is_zero() && c.is_zero()) {
    out.trace.push_back("every contraction is singular");
    return out;
  }
  if (!prof.is_concise() || !tangle.is_zero()) {
    out.trace.push_back(tangle.is_zero() ? "not concise" : "GHZ class: two distinct singular contraction lines");
    return out;
  }
  // Double root of the slice form: the only covector line with a singular contraction.
  CycVector f_star = a.is_zero() ? CycVector{Cyclotomic(1), Cyclotomic(0)} : CycVector{-b / (Cyclotomic(2) * a), Cyclotomic(1)};
  out.witness = {f_star[1], -f_star[0]};
  out.persistent = true;
  out.trace.push_back("W class (concise, tangle 0, assumed classification); singular line f*=" + vec_str(f_star) + ", witness e=" + vec_str(out.witness));
  return out;
}

CycVector dual_of(const CycVector& e) {
  CycVector f(e.size());
  for (std::size_t j = 0; j < e.size(); ++j)
    if (!e[j].is_zero()) {
      f[j] = e[j].inverse();
      return f;
    }
  throw Error(ErrorCode::BadSpec, "zero witness vector");
}

struct CandidateCheck {
  bool valid = false;
  std::vector<std::string> trace;
};

CandidateCheck check_candidate(const CycTensor& t, const CycVector& e) {
  CandidateCheck out;
  const std::string tag = "candidate e=" + vec_str(e) + ": ";
  if (e.size() != 2 || (e[0].is_zero() && e[1].is_zero())) {
    out.trace.push_back(tag + "not a nonzero qubit vector");
    return out;
  }
  // Columns (e, e') with e' a standard vector completing the basis.
  CycMatrix basis(2, 2);
  basis(0, 0) = e[0];
  basis(1, 0) = e[1];
  if (e[0].is_zero()) basis(0, 1) = Cyclotomic(1);
  else basis(1, 1) = Cyclotomic(1);
  CycTensor moved = apply_factor(t, 0, inverse(basis));
  PolyCube c = pencil(moved);
  Poly h = hyperdet(c);
  out.trace.push_back(tag + "tangle identity H(t) = " + h.str() + (h.is_zero() ? " (holds)" : " (fails)"));
  bool ok = h.is_zero();
  for (int mode = 0; mode < 3; ++mode) {
    Poly g = minor_gcd(c, mode);
    bool constant = !g.is_zero() && g.degree() == 0;
    out.trace.push_back(tag + "mode " + std::to_string(mode) + " minor gcd = " + g.str() + (constant ? " (nonzero constant)" : " (vanishes somewhere)"));
    ok = ok && constant;
  }
  out.valid = ok;
  return out;
}

}  // namespace

Cyclotomic tangle3(const CycTensor& t) {
  if (!(t.shape() == Shape({2, 2, 2}))) throw Error(ErrorCode::ShapeMismatch, "tangle3 needs shape (2,2,2), got " + t.shape().str());
  return hyperdet(entries3(t));
}

QubitDecision decide_persistence_qubits(const CycTensor& t, const std::vector<CycVector>& extra_candidates) {
  const int n = t.arity();
  for (int d : t.shape().dims())
    if (d != 2) throw Error(ErrorCode::BadDim, "decide_persistence_qubits needs all local dimensions 2");
  if (n >= 5) throw Error(ErrorCode::UnsupportedArity, "exact qubit decision covers n <= 4; use screening");
  if (n < 2) throw Error(ErrorCode::UnsupportedArity, "exact qubit decision needs n >= 2");
  QubitDecision out;
  auto make_cert = [&](std::vector<CycVector> chain) {
    PersistenceCertificate cert;
    cert.method = PersistenceMethod::EXACT_QUBIT;
    cert.witness_chain = std::move(chain);
    cert.subject = digest(t);
    cert.diagnostics = out.trace;
    return cert;
  };
  if (t.is_zero()) {
    out.trace.push_back("zero tensor");
    return out;
  }
  if (n == 2) {
    int r = mode_rank(t, 0);
    out.trace.push_back("matrix rank " + std::to_string(r));
    out.persistent = r == 2;
    if (out.persistent) out.certificate = make_cert({});
    return out;
  }
  if (n == 3) {
    ThreeQubit r = decide3(t);
    out.trace = r.trace;
    out.persistent = r.persistent;
    if (r.persistent) {
      out.valid_witnesses.push_back(r.witness);
      out.certificate = make_cert({r.witness});
    }
    return out;
  }

  // n == 4
  if (mode_rank(t, 0) != 2) {
    out.trace.push_back("not 1-concise");
    return out;
  }
  out.trace.push_back("1-concise");
  PolyCube c = pencil(t);
  Poly h = hyperdet(c);
  std::optional<CycVector> structural;
  bool structural_negative = false;
  if (!h.is_zero()) {
    out.trace.push_back("structural: pencil hyperdeterminant H(t) = " + h.str() + " is not identically zero, so all but finitely many contractions are GHZ class");
    structural_negative = true;
  } else {
    out.trace.push_back("structural: pencil hyperdeterminant vanishes identically");
    Poly product(1);
    for (int mode = 0; mode < 3 && !structural_negative; ++mode) {
      Poly g = minor_gcd(c, mode);
      out.trace.push_back("structural: mode " + std::to_string(mode) + " minor gcd = " + g.str());
      if (g.is_zero()) structural_negative = true;
      else product *= g;
    }
    if (structural_negative) {
      out.trace.push_back("structural: some mode flattening is degenerate for every t");
    } else {
      CycTensor p1 = contract(t, 0, basis_vector(1));
      bool infinity_bad = !multilinear_profile(p1).is_concise();
      Poly sf = squarefree_part(product);
      int bad = sf.degree() + (infinity_bad ? 1 : 0);
      out.trace.push_back("structural: " + std::to_string(sf.degree()) + " finite bad point(s)" + (infinity_bad ? " plus the point at infinity" : ""));
      if (bad >= 2) {
        structural_negative = true;
        out.trace.push_back("structural: two or more bad covector lines, no proper subspace can exclude them");
      } else if (sf.degree() == 1) {
        Cyclotomic root = -sf.coeffs()[0];  // sf is monic
        structural = CycVector{-root, Cyclotomic(1)};
      } else {
        structural = basis_vector(0);
      }
    }
  }

  std::vector<CycVector> candidates = extra_candidates;
  candidates.push_back(basis_vector(0));
  candidates.push_back(basis_vector(1));
  if (structural) candidates.push_back(*structural);
  std::vector<CycVector> seen;
  for (const auto& e : candidates) {
    if (std::find(seen.begin(), seen.end(), e) != seen.end()) continue;
    seen.push_back(e);
    CandidateCheck check = check_candidate(t, e);
    out.trace.insert(out.trace.end(), check.trace.begin(), check.trace.end());
    if (check.valid) out.valid_witnesses.push_back(e);
  }
  out.persistent = !out.valid_witnesses.empty();
  if (!out.persistent) {
    out.structural = structural_negative;
    out.trace.push_back(structural_negative ? "not persistent (structural argument)" : "no witness in candidate set");
    return out;
  }
  if (structural_negative) throw Error(ErrorCode::BadSpec, "internal inconsistency: candidate witness passed but structural analysis failed");
  const CycVector& e = out.valid_witnesses.front();
  CycTensor next = contract(t, 0, dual_of(e));
  ThreeQubit sub = decide3(next);
  if (!sub.persistent) throw Error(ErrorCode::BadSpec, "internal inconsistency: witness contraction is not persistent");
  out.trace.push_back("witness e=" + vec_str(e) + "; level-2 witness " + vec_str(sub.witness) + " for the dual covector contraction");
  out.certificate = make_cert({e, sub.witness});
  return out;
}

}  // namespace tenrank
