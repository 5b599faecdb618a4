#include <algorithm>
#include <numeric>

#include "tenrank/digest.hpp"
#include "tenrank/persistence.hpp"
#include "tenrank/scalar_io.hpp"

namespace tenrank {
namespace {

CycVector dual_covector(const CycVector& e) {
  CycVector f(e.size());
  for (std::size_t j = 0; j < e.size(); ++j)
    if (!e[j].is_zero()) {
      f[j] = e[j].inverse();
      return f;
    }
  throw Error(ErrorCode::WeakCertificate, "zero witness vector in certificate");
}

Cyclotomic apply_covector(const CycVector& f, const CycVector& v) {
  Cyclotomic s;
  for (std::size_t j = 0; j < f.size(); ++j)
    if (!f[j].is_zero() && !v[j].is_zero()) s += f[j] * v[j];
  return s;
}

void require_conclusive(const PersistenceCertificate& cert) {
  if (cert.method == PersistenceMethod::SCREENED || !cert.conclusive)
    throw Error(ErrorCode::WeakCertificate, "screened persistence is not a proof and cannot support a rank bound");
}

// Indices (into `terms`) whose factor-0 vectors form a greedy basis, in order.
std::vector<int> greedy_basis(const std::vector<const std::vector<Cyclotomic>*>& vecs) {
  std::vector<int> chosen;
  std::vector<std::vector<Cyclotomic>> rows;
  for (std::size_t p = 0; p < vecs.size(); ++p) {
    rows.push_back(*vecs[p]);
    if (rank_of_vectors(rows) == static_cast<int>(rows.size())) chosen.push_back(static_cast<int>(p));
    else rows.pop_back();
  }
  return chosen;
}

int minimal_persistent_rank(const Shape& s) {
  int r = 1;
  for (int k = 0; k + 1 < s.arity(); ++k) r += s.dim(k) - 1;
  return r;
}

}  // namespace

RankCertificate persistent_lower_bound(const CycTensor& t, const PersistenceCertificate& cert) {
  require_conclusive(cert);
  if (cert.subject != digest(t)) throw Error(ErrorCode::CertificateSubjectMismatch, "certificate does not describe this tensor");
  const int n = t.arity();
  if (n < 2) throw Error(ErrorCode::UnsupportedArity, "rank bound needs arity >= 2");
  if (static_cast<int>(cert.witness_chain.size()) != n - 2)
    throw Error(ErrorCode::WeakCertificate, "witness chain has " + std::to_string(cert.witness_chain.size()) + " entries, expected " + std::to_string(n - 2));

  RankCertificate out;
  out.subject = cert.subject;
  MultilinearProfile prof = multilinear_profile(t);
  out.trace.push_back(std::string("persistence via ") + std::string(to_string(cert.method)) + ", subject " + digest_hex(cert.subject));

  // Replay: each level is 1-concise, and contracting with a covector that is
  // 1 on the witness drops the rank by at least (mode rank - 1).
  CycTensor cur = t;
  int lower = 1;
  for (int level = 0; level + 1 < n; ++level) {
    const int dim = cur.shape().dim(0);
    const int r = mode_rank(cur, 0);
    if (r != dim)
      throw Error(ErrorCode::WeakCertificate, "level " + std::to_string(level) + " is not 1-concise (rank " + std::to_string(r) + " < " + std::to_string(dim) + ")");
    if (r != prof.ranks[static_cast<std::size_t>(level)])
      throw Error(ErrorCode::WeakCertificate, "factor " + std::to_string(level) + " is not concise");
    if (level + 2 == n) {
      out.trace.push_back("level " + std::to_string(level) + ": 1-concise matrix, rank " + std::to_string(r));
      lower += r - 1;
      break;
    }
    const CycVector& e = cert.witness_chain[static_cast<std::size_t>(level)];
    CycVector f = dual_covector(e);
    out.trace.push_back("level " + std::to_string(level) + ": mode rank " + std::to_string(r) + ", projecting factor " + std::to_string(level) +
                        " onto a hyperplane avoiding the witness removes at least " + std::to_string(r - 1) + " terms");
    lower += r - 1;
    cur = contract(cur, 0, f);
  }
  out.lower = lower;
  out.trace.push_back("lower bound sum_{k<n}(r_k - 1) + 1 = " + std::to_string(lower));
  return out;
}

RankCertificate with_upper_bound(RankCertificate cert, const CycTensor& t, const CycDecomposition& dec) {
  if (cert.subject != 0 && cert.subject != digest(t)) throw Error(ErrorCode::CertificateSubjectMismatch, "rank certificate describes another tensor");
  if (!verify_decomposition(t, dec)) throw Error(ErrorCode::UnverifiedDecomposition, "decomposition does not expand to the tensor");
  if (dec.size() < cert.lower)
    throw Error(ErrorCode::WeakCertificate, "verified decomposition with " + std::to_string(dec.size()) + " terms undercuts lower bound " + std::to_string(cert.lower));
  cert.subject = digest(t);
  if (!cert.upper || dec.size() < *cert.upper) {
    cert.upper = dec.size();
    cert.upper_ref = dec.note.empty() ? "verified decomposition" : dec.note;
    cert.trace.push_back("upper bound " + std::to_string(dec.size()) + " from verified decomposition: " + cert.upper_ref);
  }
  return cert;
}

RankCertificate flattening_rank_certificate(const CycTensor& t, const CycDecomposition& dec) {
  RankCertificate cert;
  cert.subject = digest(t);
  MultilinearProfile prof = multilinear_profile(t);
  cert.lower = *std::max_element(prof.ranks.begin(), prof.ranks.end());
  cert.trace.push_back("lower bound " + std::to_string(cert.lower) + " from the largest mode flattening rank");
  return with_upper_bound(std::move(cert), t, dec);
}

bool is_block_pyramidal(const CycTensor& q, const BlockSplit& split, std::string* why) {
  auto reject = [&](const std::string& reason) {
    if (why) *why = reason;
    return false;
  };
  const Shape& s = q.shape();
  if (static_cast<int>(split.size()) != s.arity()) return reject("split arity differs from tensor arity");
  for (int i = 0; i < s.arity(); ++i) {
    auto [u, v] = split[static_cast<std::size_t>(i)];
    if (u < 0 || v < 1 || u + v != s.dim(i)) return reject("split of factor " + std::to_string(i) + " does not match dimension " + std::to_string(s.dim(i)));
  }
  const int n = s.arity();
  for (const auto& [k, val] : q.entries()) {
    bool head = true;
    for (int i = 0; i < n && head; ++i) head = s.digit(k, i) < split[static_cast<std::size_t>(i)].first;
    bool last_in_v = s.digit(k, n - 1) >= split[static_cast<std::size_t>(n - 1)].first;
    if (!head && !last_in_v) {
      std::string idx;
      for (int i = 0; i < n; ++i) idx += (i ? "," : "") + std::to_string(s.digit(k, i));
      return reject("entry (" + idx + ") lies outside both the head block and the step region");
    }
  }
  return true;
}

RankCertificate composite_lower_bound(const CycTensor& q, const BlockSplit& split, const RankCertificate& head_cert,
                                      const PersistenceCertificate& step_cert) {
  std::string why;
  if (!is_block_pyramidal(q, split, &why)) throw Error(ErrorCode::NotBlockPyramidal, why);
  require_conclusive(step_cert);
  const int n = q.arity();
  std::vector<int> zeros(static_cast<std::size_t>(n), 0), u(static_cast<std::size_t>(n)), v(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    u[static_cast<std::size_t>(i)] = split[static_cast<std::size_t>(i)].first;
    v[static_cast<std::size_t>(i)] = split[static_cast<std::size_t>(i)].second;
  }
  bool has_head = std::all_of(u.begin(), u.end(), [](int x) { return x > 0; });
  CycTensor step = extract_block(q, u, v);
  if (step_cert.subject != digest(step)) throw Error(ErrorCode::CertificateSubjectMismatch, "step certificate does not describe the step block");
  int head_lower = 0;
  std::string head_text = "empty head block";
  if (has_head) {
    CycTensor head = extract_block(q, zeros, u);
    if (head_cert.subject != digest(head)) throw Error(ErrorCode::CertificateSubjectMismatch, "head certificate does not describe the head block");
    head_lower = head_cert.lower;
    head_text = "head block " + digest_hex(digest(head)) + " with rank >= " + std::to_string(head_lower);
  } else if (head_cert.lower != 0) {
    throw Error(ErrorCode::CertificateSubjectMismatch, "head block is empty but the head certificate claims rank " + std::to_string(head_cert.lower));
  }
  RankCertificate step_bound = persistent_lower_bound(step, step_cert);
  RankCertificate out;
  out.subject = digest(q);
  out.lower = head_lower + step_bound.lower;
  out.trace.push_back(head_text);
  out.trace.push_back("step block " + digest_hex(step_cert.subject) + " persistent, contributes " + std::to_string(step_bound.lower));
  for (const auto& line : step_bound.trace) out.trace.push_back("  step: " + line);
  out.trace.push_back("block pyramidal lower bound " + std::to_string(head_lower) + " + " + std::to_string(step_bound.lower) + " = " + std::to_string(out.lower));
  return out;
}

RankCertificate ghz_kron_cert(const CycTensor& p, const RankCertificate& p_rank, const PersistenceCertificate& p_cert,
                              const CycDecomposition& p_dec, int d, GhzProductMode mode) {
  if (d < 1) throw Error(ErrorCode::BadSpec, "GHZ level must be >= 1");
  const int minimal = minimal_persistent_rank(p.shape());
  if (p_rank.subject != digest(p)) throw Error(ErrorCode::CertificateSubjectMismatch, "rank certificate does not describe p");
  if (!p_rank.exact() || p_rank.lower != minimal)
    throw Error(ErrorCode::NotMinimalRank, "p needs an exact rank certificate equal to " + std::to_string(minimal));
  if (!verify_decomposition(p, p_dec)) throw Error(ErrorCode::UnverifiedDecomposition, "decomposition of p does not verify");
  const int n = p.arity();

  // G(d,n) kron P is literally the d-fold direct sum of P under k*d_i + j.
  CycTensor sum = p;
  RankCertificate cur = p_rank;
  for (int m = 1; m < d; ++m) {
    CycTensor next = direct_sum(sum, p);
    BlockSplit split;
    for (int i = 0; i < n; ++i) split.emplace_back(sum.shape().dim(i), p.shape().dim(i));
    cur = composite_lower_bound(next, split, cur, p_cert);
    sum = std::move(next);
  }
  CycTensor kron = kronecker_product(ghz(d, n), p);
  if (!(kron == sum)) throw Error(ErrorCode::BadSpec, "internal inconsistency: GHZ kron product differs from the direct sum");

  RankCertificate out;
  out.lower = cur.lower;
  out.trace.push_back("G(" + std::to_string(d) + "," + std::to_string(n) + ") kron P equals the " + std::to_string(d) + "-fold direct sum of P");
  out.trace.push_back("iterated block pyramidal bound gives " + std::to_string(cur.lower));

  CycDecomposition dec;
  if (mode == GhzProductMode::Kron) {
    dec.shape = kron.shape();
    for (int k = 0; k < d; ++k)
      for (const auto& term : p_dec.terms) {
        RankOneTerm<Cyclotomic> moved{term.scale, {}};
        for (int i = 0; i < n; ++i) {
          const int di = p.shape().dim(i);
          CycVector v(static_cast<std::size_t>(d * di));
          for (int j = 0; j < di; ++j) v[static_cast<std::size_t>(k * di + j)] = term.vectors[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
          moved.vectors.push_back(std::move(v));
        }
        dec.terms.push_back(std::move(moved));
      }
    dec.note = "replicated decomposition of P in each of the " + std::to_string(d) + " blocks";
    out.subject = digest(kron);
    out = with_upper_bound(std::move(out), kron, dec);
  } else {
    CycTensor prod = tensor_product(ghz(d, n), p);
    std::vector<int> dims(static_cast<std::size_t>(n), d);
    for (int i = 0; i < n; ++i) dims.push_back(p.shape().dim(i));
    dec.shape = Shape(dims);
    for (int k = 0; k < d; ++k)
      for (const auto& term : p_dec.terms) {
        RankOneTerm<Cyclotomic> moved{term.scale, {}};
        for (int i = 0; i < n; ++i) {
          CycVector ek(static_cast<std::size_t>(d));
          ek[static_cast<std::size_t>(k)] = Cyclotomic(1);
          moved.vectors.push_back(std::move(ek));
        }
        for (const auto& v : term.vectors) moved.vectors.push_back(v);
        dec.terms.push_back(std::move(moved));
      }
    dec.note = "e_k^{x n} tensored with each term of P, k < " + std::to_string(d);
    out.trace.push_back("the Kronecker product regroups the tensor product factors pairwise, so rk(G x P) >= rk(G kron P)");
    out.subject = digest(prod);
    out = with_upper_bound(std::move(out), prod, dec);
  }
  return out;
}

namespace {

std::vector<int> rearrange_core(const CycTensor& p, const CycDecomposition& dec, const PersistenceCertificate& cert) {

  // Terms live on as (original index, scale, remaining vectors).
  struct Live {
    int index;
    Cyclotomic scale;
    std::size_t offset;  // first factor still present
  };
  std::vector<Live> live;
  for (int p_idx = 0; p_idx < dec.size(); ++p_idx) live.push_back({p_idx, dec.terms[static_cast<std::size_t>(p_idx)].scale, 0});

  std::vector<int> order, tail;  // tail: terms killed by some projection
  CycTensor cur = p;
  std::optional<CycVector> witness;
  if (!cert.witness_chain.empty()) witness = cert.witness_chain.front();
  const int n = p.arity();
  for (int level = 0; level + 1 < n; ++level) {
    auto vec_of = [&](const Live& l) -> const std::vector<Cyclotomic>& {
      return dec.terms[static_cast<std::size_t>(l.index)].vectors[l.offset];
    };
    std::vector<const std::vector<Cyclotomic>*> firsts;
    for (const auto& l : live) firsts.push_back(&vec_of(l));
    std::vector<int> basis = greedy_basis(firsts);
    const int dim = cur.shape().dim(0);
    if (static_cast<int>(basis.size()) != dim)
      throw Error(ErrorCode::RearrangementFailed, "level " + std::to_string(level) + ": first vectors span only " + std::to_string(basis.size()) + " of " + std::to_string(dim));
    if (level + 2 == n) {
      for (int b : basis) order.push_back(live[static_cast<std::size_t>(b)].index);
      for (std::size_t q = 0; q < live.size(); ++q)
        if (std::find(basis.begin(), basis.end(), static_cast<int>(q)) == basis.end()) order.push_back(live[q].index);
      break;
    }
    if (!witness) throw Error(ErrorCode::RearrangementFailed, "no witness at level " + std::to_string(level));
    // Coordinates of the witness in the chosen basis.
    CycMatrix bm(dim, dim);
    for (int c = 0; c < dim; ++c)
      for (int r = 0; r < dim; ++r) bm(r, c) = (*firsts[static_cast<std::size_t>(basis[static_cast<std::size_t>(c)])])[static_cast<std::size_t>(r)];
    CycMatrix bm_inv = inverse(bm);
    CycVector coords = bm_inv.apply(*witness);
    int last = -1;
    for (int c = dim - 1; c >= 0 && last < 0; --c)
      if (!coords[static_cast<std::size_t>(c)].is_zero()) last = c;
    if (last < 0) throw Error(ErrorCode::RearrangementFailed, "zero witness");
    // f vanishes on every chosen basis vector but the last one and is 1 on the witness.
    CycVector f(static_cast<std::size_t>(dim));
    Cyclotomic norm = coords[static_cast<std::size_t>(last)].inverse();
    for (int j = 0; j < dim; ++j) f[static_cast<std::size_t>(j)] = bm_inv(last, j) * norm;

    std::vector<Live> next, dropped;
    for (int c = 0; c < dim; ++c)
      if (c != last) order.push_back(live[static_cast<std::size_t>(basis[static_cast<std::size_t>(c)])].index);
    // The surviving basis term leads the next level so it sits at position D_j + d_j.
    std::vector<std::size_t> seq{static_cast<std::size_t>(basis[static_cast<std::size_t>(last)])};
    for (std::size_t q = 0; q < live.size(); ++q)
      if (std::find(basis.begin(), basis.end(), static_cast<int>(q)) == basis.end()) seq.push_back(q);
    for (std::size_t q : seq) {
      Cyclotomic w = apply_covector(f, vec_of(live[q]));
      if (w.is_zero()) dropped.push_back(live[q]);
      else next.push_back({live[q].index, live[q].scale * w, live[q].offset + 1});
    }
    cur = contract(cur, 0, f);
    live = std::move(next);
    for (const auto& l : dropped) tail.push_back(l.index);
    if (level + 3 <= n - 1) {
      auto sub = certify_persistence(cur);
      if (!sub) throw Error(ErrorCode::RearrangementFailed, "contraction at level " + std::to_string(level) + " has no persistence certificate");
      witness = sub->witness_chain.front();
    }
  }
  std::vector<int> result = order;
  result.insert(result.end(), tail.begin(), tail.end());
  if (static_cast<int>(result.size()) != dec.size()) throw Error(ErrorCode::RearrangementFailed, "permutation lost terms");

  return result;
}

}  // namespace

std::vector<int> rearrange_decomposition(const CycTensor& p, const CycDecomposition& dec, const PersistenceCertificate& cert,
                                         const CycLocalMap& frame) {
  require_conclusive(cert);
  if (cert.subject != digest(p)) throw Error(ErrorCode::CertificateSubjectMismatch, "certificate does not describe this tensor");
  if (!verify_decomposition(p, dec)) throw Error(ErrorCode::UnverifiedDecomposition, "decomposition does not expand to the tensor");
  std::vector<int> result;
  if (frame.empty()) {
    result = rearrange_core(p, dec, cert);
  } else {
    if (static_cast<int>(frame.size()) != p.arity()) throw Error(ErrorCode::DimMismatch, "frame has the wrong number of factors");
    CycLocalMap back;
    for (const auto& a : frame) back.push_back(inverse(a));
    CycTensor base = slocc_apply(p, back);
    CycDecomposition base_dec = map_decomposition(back, dec);
    if (base_dec.size() != dec.size()) throw Error(ErrorCode::RearrangementFailed, "frame is not invertible on the decomposition");
    auto base_cert = certify_persistence(base);
    if (!base_cert) throw Error(ErrorCode::RearrangementFailed, "frame base tensor has no persistence certificate");
    result = rearrange_core(base, base_dec, *base_cert);
  }
  CycDecomposition permuted = dec;
  for (std::size_t i = 0; i < result.size(); ++i) permuted.terms[i] = dec.terms[static_cast<std::size_t>(result[i])];
  if (!has_basis_layout(p, permuted)) throw Error(ErrorCode::RearrangementFailed, "rearranged decomposition lacks the basis layout");
  return result;
}

bool has_basis_layout(const CycTensor& p, const CycDecomposition& dec) {
  const int n = p.arity();
  int offset = 0;
  for (int j = 0; j + 1 < n; ++j) {
    const int dj = p.shape().dim(j);
    if (offset + dj > dec.size()) return false;
    std::vector<std::vector<Cyclotomic>> rows;
    for (int q = offset; q < offset + dj; ++q) rows.push_back(dec.terms[static_cast<std::size_t>(q)].vectors[static_cast<std::size_t>(j)]);
    if (rank_of_vectors(rows) != dj) return false;
    offset += dj - 1;
  }
  return true;
}

std::optional<PersistenceCertificate> certify_family_persistence(const FamilySpec& raw) {
  FamilySpec spec = raw.normalized();
  CycTensor t = make_state(spec);
  if (auto cert = certify_persistence(t)) return cert;
  CycLocalMap frame = family_frame(spec);
  if (frame.empty()) return std::nullopt;
  FamilySpec base_spec = spec;
  base_spec.family = spec.family == Family::MPRIME ? Family::M : Family::N;
  CycTensor base_t = make_state(base_spec);
  auto base = certify_persistence(base_t);
  if (!base) return std::nullopt;
  auto cert = transport_certificate(*base, base_t, frame);
  if (cert.subject != digest(t)) return std::nullopt;
  return cert;
}

CycLocalMap family_frame(const FamilySpec& raw) {
  FamilySpec spec = raw.normalized();
  if (spec.family == Family::MPRIME && spec.d >= 3) return uniform_map(m_basis_change(spec.d), spec.n);
  if (spec.family == Family::NPRIME) {
    CycLocalMap maps = uniform_map(CycMatrix::identity(spec.d), spec.n);
    maps.back() = flip_matrix(spec.d);
    return maps;
  }
  return {};
}

RankCertificate family_rank_certificate(const FamilySpec& raw) {
  FamilySpec spec = raw.normalized();
  CycTensor t = make_state(spec);
  std::optional<CycDecomposition> dec;
  try {
    dec = decompose_family(spec);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::BadSpec) throw;
  }
  RankCertificate cert;
  if (auto pc = certify_family_persistence(spec)) {
    cert = persistent_lower_bound(t, *pc);
  } else {
    cert.subject = digest(t);
    MultilinearProfile prof = multilinear_profile(t);
    cert.lower = *std::max_element(prof.ranks.begin(), prof.ranks.end());
    cert.trace.push_back("no persistence certificate; lower bound " + std::to_string(cert.lower) + " from the largest mode flattening rank");
  }
  if (dec) cert = with_upper_bound(std::move(cert), t, *dec);
  return cert;
}

}  // namespace tenrank
