#include "tenrank/decomposition.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <unordered_map>

#include "tenrank/scalar_io.hpp"

namespace tenrank {
namespace {

// Expansion runs in the group ring Q[x]/(x^M - 1) with M the lcm of all
// cyclotomic orders involved: products of roots of unity stay single terms
// and reduction mod Phi_M happens once per output coordinate.
struct Mono {
  int eps;
  int root;
  Rational coeff;
};
using Monos = std::vector<Mono>;

int order_of(const Cyclotomic& c) { return c.order(); }
int order_of(const EpsLaurent& e) {
  int m = 1;
  for (const auto& [k, c] : e.terms()) m = std::lcm(m, c.order());
  return m;
}

Monos monos_of(const Cyclotomic& c, int m) {
  Monos out;
  for (auto& t : c.sparse_root_terms(m)) out.push_back({0, t.exponent, std::move(t.coeff)});
  return out;
}
Monos monos_of(const EpsLaurent& e, int m) {
  Monos out;
  for (const auto& [k, c] : e.terms())
    for (auto& t : c.sparse_root_terms(m)) out.push_back({k, t.exponent, std::move(t.coeff)});
  return out;
}

Monos multiply(const Monos& a, const Monos& b, int m) {
  Monos out;
  out.reserve(a.size() * b.size());
  for (const auto& x : a)
    for (const auto& y : b) out.push_back({x.eps + y.eps, (x.root + y.root) % m, x.coeff * y.coeff});
  return out;
}

struct Key {
  Index idx;
  int eps;
  int root;
  bool operator==(const Key&) const = default;
};
struct KeyHash {
  std::size_t operator()(const Key& k) const {
    std::size_t h = std::hash<Index>()(k.idx);
    h ^= std::hash<long long>()((static_cast<long long>(k.eps) << 32) ^ static_cast<unsigned>(k.root)) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h;
  }
};

template <class S>
class Expander {
 public:
  explicit Expander(const Decomposition<S>& dec) : dec_(dec) {
    long long m = 1;
    for (const auto& t : dec.terms) {
      m = std::lcm(m, static_cast<long long>(order_of(t.scale)));
      for (const auto& v : t.vectors)
        for (const auto& x : v) m = std::lcm(m, static_cast<long long>(order_of(x)));
      if (m > kMaxCyclotomicOrder) throw Error(ErrorCode::BadSpec, "decomposition spans too many cyclotomic orders");
    }
    order_ = static_cast<int>(m);
  }

  std::map<Index, std::map<int, std::vector<RootTerm>>> run() {
    for (const auto& t : dec_.terms) {
      factors_.clear();
      for (const auto& v : t.vectors) {
        std::vector<std::pair<int, Monos>> nz;
        for (std::size_t j = 0; j < v.size(); ++j)
          if (!is_zero(v[j])) nz.emplace_back(static_cast<int>(j), monos_of(v[j], order_));
        factors_.push_back(std::move(nz));
      }
      recurse(0, 0, monos_of(t.scale, order_));
    }
    std::map<Index, std::map<int, std::vector<RootTerm>>> grouped;
    for (auto& [k, c] : acc_)
      if (!c.is_zero()) grouped[k.idx][k.eps].push_back({k.root, c});
    return grouped;
  }

  int order() const { return order_; }

 private:
  void recurse(int slot, Index lin, const Monos& prefix) {
    if (slot == dec_.shape.arity()) {
      for (const auto& mono : prefix) acc_[Key{lin, mono.eps, mono.root}] += mono.coeff;
      return;
    }
    for (const auto& [j, ms] : factors_[static_cast<std::size_t>(slot)])
      recurse(slot + 1, lin + static_cast<Index>(j) * dec_.shape.stride(slot), multiply(prefix, ms, order_));
  }

  const Decomposition<S>& dec_;
  int order_ = 1;
  std::vector<std::vector<std::pair<int, Monos>>> factors_;
  std::unordered_map<Key, Rational, KeyHash> acc_;
};

void require(bool ok, const std::string& what) {
  if (!ok) throw Error(ErrorCode::BadSpec, what);
}

std::vector<Cyclotomic> unit(int d, int j) {
  std::vector<Cyclotomic> v(static_cast<std::size_t>(d));
  v[static_cast<std::size_t>(j)] = Cyclotomic(1);
  return v;
}

// (e_x + c e_y) in C^d.
std::vector<Cyclotomic> plane_vector(int d, int x, int y, const Cyclotomic& c) {
  std::vector<Cyclotomic> v(static_cast<std::size_t>(d));
  v[static_cast<std::size_t>(x)] = Cyclotomic(1);
  v[static_cast<std::size_t>(y)] += c;
  return v;
}

void ensure_verified(const CycTensor& t, const CycDecomposition& dec, const std::string& what) {
  if (!verify_decomposition(t, dec)) throw Error(ErrorCode::UnverifiedDecomposition, what + " failed exact verification");
}

// Waring terms of DICKE(a+b, b) placed in the plane {|x>, |y>} of C^d.
void append_waring_in_plane(CycDecomposition& out, int a, int b, int d, int x, int y) {
  CycDecomposition w = decompose_monomial_waring(a, b);
  for (auto& t : w.terms) {
    RankOneTerm<Cyclotomic> term{t.scale, {}};
    const Cyclotomic& c = t.vectors.front()[1];
    for (int i = 0; i < a + b; ++i) term.vectors.push_back(plane_vector(d, x, y, c));
    out.terms.push_back(std::move(term));
  }
}

CycDecomposition decompose_mprime(int d, int n) {
  CycDecomposition out{Shape::uniform(d, n), {}, ""};
  const int y = d - 1;
  if (n == 2) {
    out.note = "M'(d,2): diagonal pairs plus the two-term W_2 split";
    for (int j = 1; j <= d - 2; ++j) out.terms.push_back({Cyclotomic(1), {unit(d, j), unit(d, j)}});
    append_waring_in_plane(out, 1, 1, d, 0, y);
  } else if (n == 3) {
    // D_3^2 has rank 3, so the plane-by-plane route would overshoot; use a
    // pencil that shares the |000> correction across all planes instead.
    out.note = "M'(d,3): 2d-1 term pencil construction";
    const int q = d - 2;
    auto first = unit(d, y);
    first[0] = Cyclotomic(-q);
    out.terms.push_back({Cyclotomic(1), {first, unit(d, 0), unit(d, 0)}});
    const Cyclotomic half(Rational(1, 2));
    for (int i = 1; i <= q; ++i)
      for (int s : {1, -1}) {
        auto v = plane_vector(d, 0, i, Cyclotomic(s));
        out.terms.push_back({half, {v, v, v}});
      }
    for (int s : {1, -1}) {
      auto v = plane_vector(d, 0, y, Cyclotomic(s));
      out.terms.push_back({Cyclotomic(Rational(s, 2)), {unit(d, 0), v, v}});
    }
  } else {
    out.note = "M'(d,n): DICKE(n,2) Waring terms in each {0,j} plane plus W(n) in the {0,d-1} plane";
    for (int j = 1; j <= d - 2; ++j) append_waring_in_plane(out, n - 2, 2, d, 0, j);
    append_waring_in_plane(out, n - 1, 1, d, 0, y);
  }
  return out;
}

}  // namespace

template <class S>
void check_shape(const Decomposition<S>& dec) {
  for (const auto& t : dec.terms) {
    if (static_cast<int>(t.vectors.size()) != dec.shape.arity())
      throw Error(ErrorCode::ShapeMismatch, "decomposition term has " + std::to_string(t.vectors.size()) + " vectors for shape " + dec.shape.str());
    for (int i = 0; i < dec.shape.arity(); ++i)
      if (static_cast<int>(t.vectors[static_cast<std::size_t>(i)].size()) != dec.shape.dim(i))
        throw Error(ErrorCode::ShapeMismatch, "decomposition vector length does not match shape " + dec.shape.str());
  }
}
template void check_shape(const CycDecomposition&);
template void check_shape(const EpsDecomposition&);

CycTensor expand(const CycDecomposition& dec) {
  check_shape(dec);
  Expander<Cyclotomic> ex(dec);
  auto grouped = ex.run();
  std::vector<CycTensor::Entry> entries;
  for (auto& [idx, by_eps] : grouped) {
    Cyclotomic v = Cyclotomic::from_root_terms(ex.order(), by_eps[0]);
    if (!v.is_zero()) entries.emplace_back(idx, std::move(v));
  }
  return CycTensor::from_linear(dec.shape, std::move(entries));
}

EpsTensor expand(const EpsDecomposition& dec) {
  check_shape(dec);
  Expander<EpsLaurent> ex(dec);
  auto grouped = ex.run();
  std::vector<EpsTensor::Entry> entries;
  for (auto& [idx, by_eps] : grouped) {
    EpsLaurent v;
    for (auto& [k, terms] : by_eps) v += EpsLaurent::monomial(k, Cyclotomic::from_root_terms(ex.order(), terms));
    if (!v.is_zero()) entries.emplace_back(idx, std::move(v));
  }
  return EpsTensor::from_linear(dec.shape, std::move(entries));
}

bool verify_decomposition(const CycTensor& t, const CycDecomposition& dec) {
  if (!(t.shape() == dec.shape)) throw Error(ErrorCode::ShapeMismatch, "decomposition shape " + dec.shape.str() + " vs tensor " + t.shape().str());
  return expand(dec) == t;
}

bool verify_decomposition(const EpsTensor& t, const EpsDecomposition& dec) {
  if (!(t.shape() == dec.shape)) throw Error(ErrorCode::ShapeMismatch, "decomposition shape " + dec.shape.str() + " vs tensor " + t.shape().str());
  return expand(dec) == t;
}

CycDecomposition decompose_support(const CycTensor& t) {
  CycDecomposition out{t.shape(), {}, "one term per stored entry"};
  for (const auto& [k, v] : t.entries()) {
    RankOneTerm<Cyclotomic> term{v, {}};
    for (int i = 0; i < t.arity(); ++i) term.vectors.push_back(unit(t.shape().dim(i), t.shape().digit(k, i)));
    out.terms.push_back(std::move(term));
  }
  return out;
}

CycDecomposition decompose_trivial(Family family, int d, int n) {
  switch (family) {
    case Family::GHZ: {
      CycDecomposition out{Shape::uniform(d, n), {}, "GHZ diagonal terms"};
      for (int j = 0; j < d; ++j) out.terms.push_back({Cyclotomic(1), std::vector<std::vector<Cyclotomic>>(static_cast<std::size_t>(n), unit(d, j))});
      return out;
    }
    case Family::W: {
      CycDecomposition out = decompose_support(w_state(n));
      out.note = "W summands";
      return out;
    }
    case Family::N: {
      CycDecomposition out = decompose_support(n_state(d, n));
      out.note = "N summands";
      return out;
    }
    default:
      throw Error(ErrorCode::BadSpec, "decompose_trivial covers GHZ, W and N only");
  }
}

CycDecomposition decompose_l(int d, int n) {
  require(d >= 2 && n >= 2, "decompose_l needs d >= 2, n >= 2");
  const int r = (n - 1) * (d - 1) + 1;
  CycDecomposition out{Shape::uniform(d, n), {}, "symmetric roots-of-unity terms over Q(zeta_" + std::to_string(r) + ")"};
  const Rational inv_r(1, r);
  for (int p = 0; p < r; ++p) {
    std::vector<Cyclotomic> v(static_cast<std::size_t>(d));
    for (int j = 0; j < d; ++j) v[static_cast<std::size_t>(j)] = Cyclotomic::root(r, static_cast<std::int64_t>(p) * j);
    Cyclotomic scale = Cyclotomic::root(r, static_cast<std::int64_t>(p) * (1 - d)) * Cyclotomic(inv_r);
    out.terms.push_back({scale, std::vector<std::vector<Cyclotomic>>(static_cast<std::size_t>(n), v)});
  }
  return out;
}

CycDecomposition decompose_monomial_waring(int a, int b) {
  require(a >= b && b >= 1, "monomial Waring decomposition needs a >= b >= 1");
  const int n = a + b;
  const int m = a + 1;
  CycDecomposition out{Shape::uniform(2, n), {}, ""};
  for (int i = 0; i < m; ++i) {
    std::vector<Cyclotomic> v{Cyclotomic(1), Cyclotomic::root(m, i)};
    out.terms.push_back({Cyclotomic::root(m, -static_cast<std::int64_t>(i) * b), std::vector<std::vector<Cyclotomic>>(static_cast<std::size_t>(n), v)});
  }
  // Read the global scale off |0..01..1> (b ones), then check every coordinate.
  CycTensor unscaled = expand(out);
  Index probe = (Index{1} << b) - 1;
  Cyclotomic mu = unscaled.at_linear(probe);
  if (mu.is_zero()) throw Error(ErrorCode::UnverifiedDecomposition, "Waring probe coordinate vanished");
  Cyclotomic scale = mu.inverse();
  for (auto& t : out.terms) t.scale *= scale;
  out.note = "roots-of-unity Waring terms of x^" + std::to_string(a) + " y^" + std::to_string(b) + ", multiplicity " + format_scalar(mu);
  ensure_verified(dicke(n, b), out, "Waring decomposition");
  return out;
}

CycDecomposition decompose_m(int d, int n, Family variant) {
  require(d >= 2 && n >= 2, "decompose_m needs d >= 2, n >= 2");
  require(variant == Family::M || variant == Family::MPRIME, "decompose_m variant must be M or MPRIME");
  CycDecomposition prime = decompose_mprime(d, n);
  if (variant == Family::MPRIME || d <= 3) {
    CycDecomposition out = prime;
    if (variant == Family::M) out.note += "; M = M' for d <= 3";
    ensure_verified(variant == Family::M ? m_state(d, n) : mprime_state(d, n), out, "M' decomposition");
    return out;
  }
  CycDecomposition out = map_decomposition(uniform_map(inverse(m_basis_change(d)), n), prime);
  out.note = prime.note + "; pulled back through the inverse M -> M' basis change";
  ensure_verified(m_state(d, n), out, "M decomposition");
  return out;
}

CycDecomposition decompose_family(const FamilySpec& raw) {
  FamilySpec s = raw.normalized();
  switch (s.family) {
    case Family::GHZ:
    case Family::W:
    case Family::N:
      return decompose_trivial(s.family, s.d, s.n);
    case Family::L:
    case Family::Y:
      return decompose_l(s.d, s.n);
    case Family::M:
    case Family::MPRIME:
      return decompose_m(s.d, s.n, s.family);
    case Family::NPRIME: {
      CycLocalMap flip = uniform_map(CycMatrix::identity(s.d), s.n);
      flip.back() = flip_matrix(s.d);
      CycDecomposition out = map_decomposition(flip, decompose_trivial(Family::N, s.d, s.n));
      out.note = "N summands with the last factor flipped";
      return out;
    }
    case Family::DICKE: {
      const int ones = s.l;
      const int zeros = s.n - s.l;
      if (ones == 0 || zeros == 0) {
        CycDecomposition out = decompose_support(dicke(s.n, s.l));
        out.note = "product state";
        return out;
      }
      int a = std::max(ones, zeros);
      int b = std::min(ones, zeros);
      CycDecomposition out = decompose_monomial_waring(a, b);
      if (ones > zeros) {
        // The Waring terms place b ones; swap the basis to place b zeros.
        out = map_decomposition(uniform_map(flip_matrix(2), s.n), out);
        out.note = "Waring terms with |0> and |1> swapped";
      }
      return out;
    }
    case Family::NONSYM4:
      break;
  }
  throw Error(ErrorCode::BadSpec, "no decomposition constructor for " + s.str());
}

template <class S>
Decomposition<S> map_decomposition(const LocalMap<S>& m, const Decomposition<S>& dec) {
  check_shape(dec);
  if (static_cast<int>(m.size()) != dec.shape.arity()) throw Error(ErrorCode::DimMismatch, "local map has the wrong number of factors");
  std::vector<int> dims;
  for (int i = 0; i < dec.shape.arity(); ++i) {
    if (m[static_cast<std::size_t>(i)].cols() != dec.shape.dim(i)) throw Error(ErrorCode::DimMismatch, "local map input dimension does not match factor " + std::to_string(i));
    dims.push_back(m[static_cast<std::size_t>(i)].rows());
  }
  Decomposition<S> out{Shape(dims), {}, dec.note};
  for (const auto& t : dec.terms) {
    RankOneTerm<S> term{t.scale, {}};
    bool vanished = is_zero(t.scale);
    for (int i = 0; i < dec.shape.arity() && !vanished; ++i) {
      auto v = m[static_cast<std::size_t>(i)].apply(t.vectors[static_cast<std::size_t>(i)]);
      vanished = std::all_of(v.begin(), v.end(), [](const S& x) { return is_zero(x); });
      term.vectors.push_back(std::move(v));
    }
    if (!vanished) out.terms.push_back(std::move(term));
  }
  return out;
}
template CycDecomposition map_decomposition(const CycLocalMap&, const CycDecomposition&);
template EpsDecomposition map_decomposition(const EpsLocalMap&, const EpsDecomposition&);

EpsDecomposition to_eps(const CycDecomposition& dec) {
  EpsDecomposition out{dec.shape, {}, dec.note};
  for (const auto& t : dec.terms) {
    RankOneTerm<EpsLaurent> term{EpsLaurent(t.scale), {}};
    for (const auto& v : t.vectors) term.vectors.emplace_back(v.begin(), v.end());
    out.terms.push_back(std::move(term));
  }
  return out;
}

CycDecomposition tensor_product(const CycDecomposition& a, const CycDecomposition& b) {
  std::vector<int> dims = a.shape.dims();
  for (int d : b.shape.dims()) dims.push_back(d);
  CycDecomposition out;
  out.shape = Shape(dims);
  for (const auto& s : a.terms)
    for (const auto& t : b.terms) {
      RankOneTerm<Cyclotomic> term{s.scale * t.scale, s.vectors};
      term.vectors.insert(term.vectors.end(), t.vectors.begin(), t.vectors.end());
      out.terms.push_back(std::move(term));
    }
  out.note = "products of terms";
  return out;
}

CycDecomposition kronecker_product(const CycDecomposition& a, const CycDecomposition& b) {
  const int n = a.shape.arity();
  if (n > b.shape.arity()) throw Error(ErrorCode::ArityMismatch, "Kronecker product needs arity(a) <= arity(b)");
  std::vector<int> dims;
  for (int i = 0; i < b.shape.arity(); ++i) dims.push_back(i < n ? a.shape.dim(i) * b.shape.dim(i) : b.shape.dim(i));
  CycDecomposition out;
  out.shape = Shape(dims);
  for (const auto& s : a.terms)
    for (const auto& t : b.terms) {
      RankOneTerm<Cyclotomic> term{s.scale * t.scale, {}};
      for (int i = 0; i < b.shape.arity(); ++i) {
        if (i >= n) {
          term.vectors.push_back(t.vectors[static_cast<std::size_t>(i)]);
          continue;
        }
        const auto& u = s.vectors[static_cast<std::size_t>(i)];
        const auto& v = t.vectors[static_cast<std::size_t>(i)];
        std::vector<Cyclotomic> w(u.size() * v.size());
        for (std::size_t j = 0; j < u.size(); ++j)
          if (!u[j].is_zero())
            for (std::size_t k = 0; k < v.size(); ++k) w[j * v.size() + k] = u[j] * v[k];
        term.vectors.push_back(std::move(w));
      }
      out.terms.push_back(std::move(term));
    }
  out.note = "Kronecker products of terms";
  return out;
}

CycDecomposition direct_sum(const CycDecomposition& a, const CycDecomposition& b) {
  const int n = a.shape.arity();
  if (n != b.shape.arity()) throw Error(ErrorCode::ArityMismatch, "direct sum needs equal arities");
  std::vector<int> dims;
  for (int i = 0; i < n; ++i) dims.push_back(a.shape.dim(i) + b.shape.dim(i));
  CycDecomposition out;
  out.shape = Shape(dims);
  auto place = [&](const CycDecomposition& src, bool second) {
    for (const auto& t : src.terms) {
      RankOneTerm<Cyclotomic> term{t.scale, {}};
      for (int i = 0; i < n; ++i) {
        std::vector<Cyclotomic> v(static_cast<std::size_t>(dims[static_cast<std::size_t>(i)]));
        const std::size_t off = second ? static_cast<std::size_t>(a.shape.dim(i)) : 0;
        const auto& src_v = t.vectors[static_cast<std::size_t>(i)];
        for (std::size_t j = 0; j < src_v.size(); ++j) v[off + j] = src_v[j];
        term.vectors.push_back(std::move(v));
      }
      out.terms.push_back(std::move(term));
    }
  };
  place(a, false);
  place(b, true);
  out.note = "block union of terms";
  return out;
}

}  // namespace tenrank
