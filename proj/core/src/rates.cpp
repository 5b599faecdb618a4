#include "tenrank/rates.hpp"

#include <cmath>
#include <cstdio>
#include <map>
#include <optional>

#include "tenrank/digest.hpp"

namespace tenrank {
namespace {

using Exponents = std::map<unsigned long, long>;

// Prime exponents of a rational by trial division; nullopt when too large.
std::optional<Exponents> factor(const Rational& r) {
  Exponents e;
  for (const auto& [z, sign] : {std::pair{r.numerator(), 1L}, std::pair{r.denominator(), -1L}}) {
    mpz_class a = abs(z);
    if (a > mpz_class(1000000000000UL)) return std::nullopt;
    unsigned long v = a.get_ui();
    for (unsigned long p = 2; p * p <= v; ++p)
      while (v % p == 0) {
        e[p] += sign;
        v /= p;
      }
    if (v > 1) e[v] += sign;
  }
  return e;
}

// q * y == p * x coordinatewise.
bool scaled_equal(const Exponents& x, const Exponents& y, long p, long q) {
  auto get = [](const Exponents& m, unsigned long k) {
    auto it = m.find(k);
    return it == m.end() ? 0L : it->second;
  };
  for (const auto& [k, v] : x)
    if (q * get(y, k) != p * v) return false;
  for (const auto& [k, v] : y)
    if (q * v != p * get(x, k)) return false;
  return true;
}

// (a2, b2) = (a1^t, b1^t) for one rational t; then the two log ratios agree.
bool common_power(const Rational& a1, const Rational& b1, const Rational& a2, const Rational& b2) {
  auto fa1 = factor(a1), fb1 = factor(b1), fa2 = factor(a2), fb2 = factor(b2);
  if (!fa1 || !fb1 || !fa2 || !fb2 || fa1->empty()) return false;
  const auto& [prime, q] = *fa1->begin();
  auto it = fa2->find(prime);
  if (it == fa2->end()) return false;
  return scaled_equal(*fa1, *fa2, it->second, q) && scaled_equal(*fb1, *fb2, it->second, q);
}

}  // namespace

SchmidtProfile schmidt_profile(const CycTensor& t, int cap) {
  if (t.arity() > cap) throw Error(ErrorCode::ArityCapExceeded, "arity " + std::to_string(t.arity()) + " exceeds the profile cap " + std::to_string(cap));
  if (t.arity() < 2) throw Error(ErrorCode::UnsupportedArity, "a Schmidt profile needs arity >= 2");
  SchmidtProfile out;
  for (auto& s : Bipartition::all(t.arity())) {
    int r = schmidt_rank(t, s);
    out.emplace_back(std::move(s), r);
  }
  return out;
}

int compare_log_ratio(const Rational& a1, const Rational& b1, const Rational& a2, const Rational& b2) {
  // Equal irrational ratios never separate in the expansion below.
  if (common_power(a1, b1, a2, b2)) return 0;
  // log_b a = k + 1 / log_r b with b^k <= a < b^{k+1} and r = a / b^k.
  Rational x1 = a1, y1 = b1, x2 = a2, y2 = b2;
  int sign = 1;
  for (int depth = 0; depth < 256; ++depth) {
    auto split = [](Rational& x, const Rational& y) {
      int k = 0;
      while (compare(x, y) >= 0) {
        x = x / y;
        ++k;
      }
      return k;
    };
    int k1 = split(x1, y1), k2 = split(x2, y2);
    if (k1 != k2) return sign * (k1 < k2 ? -1 : 1);
    bool done1 = x1.is_one(), done2 = x2.is_one();
    if (done1 && done2) return 0;
    if (done1) return -sign;
    if (done2) return sign;
    // Fractional parts are 1/log_{x} y; larger reciprocal means smaller part.
    std::swap(x1, y1);
    std::swap(x2, y2);
    sign = -sign;
  }
  return 0;
}

RateBound rate_lower_bound(const CycTensor& src, const CycTensor& tgt) {
  if (src.arity() != tgt.arity()) throw Error(ErrorCode::ArityMismatch, "rate needs equal arities");
  SchmidtProfile ps = schmidt_profile(src), pt = schmidt_profile(tgt);
  RateBound out;
  // Ordering: infinite (source 1, target > 1) > finite ratios > undefined (both 1).
  enum Kind { Undefined, Finite, Infinite };
  Kind best_kind = Undefined;
  for (std::size_t i = 0; i < ps.size(); ++i) {
    const int rs = ps[i].second, rt = pt[i].second;
    out.trace.push_back("cut " + ps[i].first.str() + ": target " + std::to_string(rt) + ", source " + std::to_string(rs));
    Kind kind = rs == 1 ? (rt == 1 ? Undefined : Infinite) : Finite;
    bool better = false;
    if (kind > best_kind) {
      better = true;
    } else if (kind == Finite && best_kind == Finite) {
      better = compare_log_ratio(Rational(rt), Rational(rs), Rational(out.best_pair.first), Rational(out.best_pair.second)) > 0;
    }
    if (better) {
      best_kind = kind;
      out.best_pair = {rt, rs};
      out.best_cut = ps[i].first;
    }
  }
  auto [rt, rs] = out.best_pair;
  out.value_is_at_least_one = best_kind == Infinite || (best_kind == Finite && rt >= rs);
  out.value_exceeds_one = best_kind == Infinite || (best_kind == Finite && rt > rs);
  if (best_kind == Infinite) {
    out.display_value = "inf";
  } else if (best_kind == Undefined) {
    out.display_value = "undefined";
  } else {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6f", rt == 1 ? 0.0 : std::log(static_cast<double>(rt)) / std::log(static_cast<double>(rs)));
    out.display_value = buf;
  }
  out.trace.push_back("maximizing pair (" + std::to_string(rt) + "," + std::to_string(rs) + ")" + (out.best_cut ? " at cut " + out.best_cut->str() : "") +
                      (out.value_is_at_least_one ? ", bound >= 1" : ", bound < 1"));
  return out;
}

RateCertificate rate_one_certificate(const CycTensor& src, const CycTensor& tgt, const EpsLocalMap& maps) {
  RateCertificate out;
  try {
    out.degeneration = verify_degeneration(src, maps, tgt);
    out.trace.push_back("upper half: source degenerates to target, so the rate is at most 1");
  } catch (const Error& e) {
    out.failing = "degeneration";
    out.trace.push_back(std::string("upper half failed: ") + e.what());
  }
  if (src.arity() == tgt.arity()) {
    out.bound = rate_lower_bound(src, tgt);
    if (out.bound.value_exceeds_one) {
      out.trace.push_back("lower half: Schmidt rank ratio bound exceeds 1, so the rate cannot be one");
    } else if (out.bound.value_is_at_least_one) {
      out.trace.push_back("lower half: Schmidt rank ratio bound is at least 1");
    } else {
      out.failing = out.failing.empty() ? "lower-bound" : out.failing + ",lower-bound";
      out.trace.push_back("lower half failed: best Schmidt rank ratio is below 1");
    }
  } else {
    out.failing = out.failing.empty() ? "lower-bound" : out.failing + ",lower-bound";
    out.trace.push_back("lower half failed: arities differ");
  }
  out.rate_one = out.failing.empty();
  return out;
}

EpsLocalMap canonical_rate_maps(Family source, Family target, int d, int n) {
  auto lm = [&] { return canonical_chain_maps(ChainStep::L_TO_M, d, n); };
  auto mn = [&] { return canonical_chain_maps(ChainStep::M_TO_N, d, n); };
  auto gl = [&] {
    if (n < 3) throw Error(ErrorCode::BadSpec, "rate maps need n >= 3");
    return ghz_degeneration_from_eps(eps_decomposition(Family::L, d, n), n);
  };
  if (source == Family::L && target == Family::M) return lm();
  if (source == Family::M && target == Family::N) return mn();
  if (source == Family::L && target == Family::N) return compose(mn(), lm());
  if (source == Family::GHZ && target == Family::L) return gl();
  if (source == Family::GHZ && target == Family::M) return compose(lm(), gl());
  if (source == Family::GHZ && target == Family::N) return compose(mn(), compose(lm(), gl()));
  throw Error(ErrorCode::BadSpec, "no canonical maps from " + std::string(to_string(source)) + " to " + std::string(to_string(target)));
}

CycLocalMap slocc_from_decomposition(const CycTensor& t, const CycDecomposition& dec) {
  if (!verify_decomposition(t, dec)) throw Error(ErrorCode::UnverifiedDecomposition, "decomposition does not expand to the tensor");
  const int n = t.arity(), r = dec.size();
  CycLocalMap maps;
  for (int i = 0; i < n; ++i) {
    CycMatrix a(t.shape().dim(i), r);
    for (int p = 0; p < r; ++p) {
      const auto& term = dec.terms[static_cast<std::size_t>(p)];
      for (int j = 0; j < a.rows(); ++j) {
        const Cyclotomic& v = term.vectors[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
        a(j, p) = i == 0 ? term.scale * v : v;
      }
    }
    maps.push_back(std::move(a));
  }
  return maps;
}

}  // namespace tenrank
