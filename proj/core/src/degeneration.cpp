#include "tenrank/degeneration.hpp"

#include <algorithm>
#include <climits>

#include "tenrank/digest.hpp"
#include "tenrank/scalar_io.hpp"

namespace tenrank {
namespace {

std::pair<int, int> exponent_range(const EpsTensor& t) {
  int lo = INT_MAX, hi = INT_MIN;
  for (const auto& [k, v] : t.entries()) {
    lo = std::min(lo, v.lowest().first);
    hi = std::max(hi, v.highest());
  }
  return {lo, hi};
}

// Lowest stored exponent among the matrix entries (0 for a zero matrix).
int min_exponent(const EpsMatrix& a) {
  int lo = INT_MAX;
  for (int r = 0; r < a.rows(); ++r)
    for (int c = 0; c < a.cols(); ++c)
      if (!a(r, c).is_zero()) lo = std::min(lo, a(r, c).lowest().first);
  return lo == INT_MAX ? 0 : lo;
}

// Nonzero lambda with a == lambda * b, if any.
std::optional<Cyclotomic> proportional(const CycTensor& a, const CycTensor& b) {
  if (a.is_zero() || b.is_zero() || !(a.shape() == b.shape()) || a.nnz() != b.nnz()) return std::nullopt;
  const auto& [k, v] = b.entries().front();
  Cyclotomic lambda = a.at_linear(k) / v;
  if (lambda.is_zero() || !(b.scaled(lambda) == a)) return std::nullopt;
  return lambda;
}

EpsLaurent eps_pow(int k, const Cyclotomic& c = Cyclotomic(1)) { return EpsLaurent::monomial(k, c); }

}  // namespace

std::string_view to_string(ChainStep s) { return s == ChainStep::L_TO_M ? "l-to-m" : "m-to-n"; }

ChainStep parse_chain_step(std::string_view s) {
  if (s == "l-to-m" || s == "L_TO_M") return ChainStep::L_TO_M;
  if (s == "m-to-n" || s == "M_TO_N") return ChainStep::M_TO_N;
  throw Error(ErrorCode::ParseError, "unknown chain step '" + std::string(s) + "'");
}

DegenerationCertificate verify_degeneration(const CycTensor& src, const EpsLocalMap& maps, const CycTensor& tgt) {
  if (static_cast<int>(maps.size()) != src.arity()) throw Error(ErrorCode::DimMismatch, "map count differs from source arity");
  EpsTensor image = slocc_apply(to_eps(src), maps);
  if (!(image.shape() == tgt.shape())) throw Error(ErrorCode::ShapeMismatch, "image shape " + image.shape().str() + " differs from target " + tgt.shape().str());
  if (image.is_zero()) throw Error(ErrorCode::NotADegeneration, "the maps send the source to zero");
  auto [lo, hi] = exponent_range(image);
  CycTensor lowest = eps_coefficient(image, lo);
  auto lambda = proportional(lowest, tgt);
  if (!lambda)
    throw Error(ErrorCode::NotADegeneration, "lowest eps-order tensor (order " + std::to_string(lo) + ", " + std::to_string(lowest.nnz()) +
                                                 " entries) is not a multiple of the target");
  DegenerationCertificate cert;
  for (const auto& a : maps) cert.normalization_shift -= min_exponent(a);
  cert.approximation_degree = lo + cert.normalization_shift;
  cert.error_degree = hi - lo;
  cert.scalar = *lambda;
  cert.verified = true;
  cert.source = digest(src);
  cert.target = digest(tgt);
  cert.trace.push_back("image spans eps orders " + std::to_string(lo) + ".." + std::to_string(hi));
  cert.trace.push_back("maps multiplied by eps^" + std::to_string(cert.normalization_shift) + " in total to become polynomial");
  cert.trace.push_back("lowest order equals " + format_scalar(*lambda) + " * target; approximation degree " + std::to_string(cert.approximation_degree) +
                       ", error degree " + std::to_string(cert.error_degree));
  return cert;
}

EpsLocalMap canonical_chain_maps(ChainStep step, int d, int n) {
  if (d < 2) throw Error(ErrorCode::BadDim, "chain maps need d >= 2");
  if (n < 3) throw Error(ErrorCode::BadSpec, "the degeneration chain needs n >= 3");
  EpsLocalMap maps;
  if (step == ChainStep::L_TO_M) {
    std::vector<EpsLaurent> diag(static_cast<std::size_t>(d), eps_pow(n - 2));
    diag.front() = eps_pow(-2);
    diag.back() = eps_pow(2 * (n - 1));
    maps.assign(static_cast<std::size_t>(n), EpsMatrix::diagonal(diag));
  } else {
    std::vector<EpsLaurent> diag(static_cast<std::size_t>(d), eps_pow(1)), inv(static_cast<std::size_t>(d), eps_pow(-1));
    diag.front() = diag.back() = inv.front() = inv.back() = EpsLaurent(1);
    maps.assign(static_cast<std::size_t>(n - 1), EpsMatrix::diagonal(diag));
    maps.push_back(EpsMatrix::diagonal(inv));
  }
  return maps;
}

EpsLocalMap compose(const EpsLocalMap& second, const EpsLocalMap& first) {
  if (second.size() != first.size()) throw Error(ErrorCode::ArityMismatch, "composed maps have different arities");
  EpsLocalMap out;
  for (std::size_t i = 0; i < first.size(); ++i) out.push_back(second[i] * first[i]);
  return out;
}

EpsDecomposition eps_decomposition(Family family, int d, int n) {
  if (d < 2 || n < 2) throw Error(ErrorCode::BadSpec, "eps decompositions need d >= 2 and n >= 2");
  EpsDecomposition dec;
  dec.shape = Shape::uniform(d, n);
  const auto ud = static_cast<std::size_t>(d);
  auto uniform = [&](EpsLaurent scale, std::vector<EpsLaurent> v) {
    dec.terms.push_back({std::move(scale), std::vector<std::vector<EpsLaurent>>(static_cast<std::size_t>(n), std::move(v))});
  };
  switch (family) {
    case Family::L: {
      for (int p = 0; p < d; ++p) {
        std::vector<EpsLaurent> v(ud);
        for (int j = 0; j < d; ++j) v[static_cast<std::size_t>(j)] = eps_pow(j, Cyclotomic::root(d, p * j));
        uniform(eps_pow(1 - d, Cyclotomic::root(d, p) / Cyclotomic(d)), std::move(v));
      }
      dec.note = "roots-of-unity filter over Z_" + std::to_string(d) + " on (sum_j eps^j xi^{pj} |j>)^{x n}";
      break;
    }
    case Family::MPRIME: {
      if (d < 3) throw Error(ErrorCode::BadSpec, "the M' approximation needs d >= 3 (its correction weight is 1/(d-2))");
      const Cyclotomic weight = Cyclotomic(Rational(1, d - 2));
      for (int j = 1; j <= d - 2; ++j) {
        std::vector<EpsLaurent> v(ud);
        v[0] = EpsLaurent(1);
        v[static_cast<std::size_t>(j)] = eps_pow(1);
        v[ud - 1] = eps_pow(2, weight);
        uniform(eps_pow(-2), std::move(v));
      }
      std::vector<EpsLaurent> corr(ud);
      corr[0] = EpsLaurent(1);
      for (int j = 1; j <= d - 2; ++j) corr[static_cast<std::size_t>(j)] = eps_pow(2);
      uniform(eps_pow(-3, Cyclotomic(-1)), std::move(corr));
      std::vector<EpsLaurent> zero(ud);
      zero[0] = EpsLaurent(1);
      uniform(eps_pow(-2, Cyclotomic(2 - d)) + eps_pow(-3), std::move(zero));
      dec.note = "shifted powers in each {0,j} plane, one cancelling correction term, one |0...0> term";
      break;
    }
    case Family::NPRIME: {
      for (int j = 1; j < d; ++j) {
        RankOneTerm<EpsLaurent> term{eps_pow(-1), {}};
        std::vector<EpsLaurent> v(ud);
        v[0] = EpsLaurent(1);
        v[static_cast<std::size_t>(j)] = eps_pow(1);
        term.vectors.assign(static_cast<std::size_t>(n - 1), v);
        std::vector<EpsLaurent> last(ud);
        last[static_cast<std::size_t>(j)] = EpsLaurent(1);
        term.vectors.push_back(std::move(last));
        dec.terms.push_back(std::move(term));
      }
      RankOneTerm<EpsLaurent> tail{eps_pow(-1), {}};
      std::vector<EpsLaurent> e0(ud);
      e0[0] = EpsLaurent(1);
      tail.vectors.assign(static_cast<std::size_t>(n - 1), e0);
      std::vector<EpsLaurent> last(ud, EpsLaurent(-1));
      last[0] = eps_pow(1);
      tail.vectors.push_back(std::move(last));
      dec.terms.push_back(std::move(tail));
      dec.note = "(|0> + eps|j>)^{x(n-1)} x |j> for j >= 1 and one compensating term";
      break;
    }
    default:
      throw Error(ErrorCode::BadSpec, "no eps decomposition for family " + std::string(to_string(family)));
  }
  return dec;
}

BorderRankCertificate border_rank_certificate(const CycTensor& t, const EpsDecomposition& epsdec) {
  if (!(epsdec.shape == t.shape())) throw Error(ErrorCode::InvalidEpsDecomposition, "decomposition shape differs from the tensor");
  if (t.is_zero()) throw Error(ErrorCode::ZeroTensor, "border rank of the zero tensor");
  EpsTensor image = expand(epsdec);
  if (image.is_zero()) throw Error(ErrorCode::InvalidEpsDecomposition, "terms sum to zero");
  auto [lo, hi] = exponent_range(image);
  CycTensor lowest = eps_coefficient(image, lo);
  auto lambda = proportional(lowest, t);
  if (!lambda) throw Error(ErrorCode::InvalidEpsDecomposition, "lowest eps-order (" + std::to_string(lo) + ") of the expansion is not a multiple of the tensor");
  BorderRankCertificate cert;
  cert.terms = epsdec;
  cert.upper = epsdec.size();
  cert.order = lo;
  cert.scalar = *lambda;
  cert.subject = digest(t);
  MultilinearProfile prof = multilinear_profile(t);
  cert.lower = *std::max_element(prof.ranks.begin(), prof.ranks.end());
  cert.trace.push_back("expansion has lowest order eps^" + std::to_string(lo) + (lo == 0 ? "" : " (divided out)") + " equal to " + format_scalar(*lambda) +
                       " * tensor; orders below it cancel");
  cert.trace.push_back("upper bound " + std::to_string(cert.upper) + " from the eps-decomposition: " + epsdec.note);
  cert.trace.push_back("lower bound " + std::to_string(cert.lower) + " from the largest mode flattening rank");
  return cert;
}

EpsLocalMap ghz_degeneration_from_eps(const EpsDecomposition& epsdec, int n) {
  if (epsdec.terms.empty()) throw Error(ErrorCode::InvalidEpsDecomposition, "no terms");
  if (epsdec.shape.arity() != n) throw Error(ErrorCode::InvalidEpsDecomposition, "decomposition arity differs from n");
  try {
    check_shape(epsdec);
  } catch (const Error& e) {
    throw Error(ErrorCode::InvalidEpsDecomposition, e.what());
  }
  const int r = epsdec.size();
  EpsLocalMap maps;
  for (int i = 0; i < n; ++i) {
    EpsMatrix a(epsdec.shape.dim(i), r);
    for (int p = 0; p < r; ++p) {
      const auto& term = epsdec.terms[static_cast<std::size_t>(p)];
      for (int j = 0; j < a.rows(); ++j) {
        EpsLaurent v = term.vectors[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
        a(j, p) = i == 0 ? term.scale * v : v;
      }
    }
    maps.push_back(std::move(a));
  }
  return maps;
}

}  // namespace tenrank
