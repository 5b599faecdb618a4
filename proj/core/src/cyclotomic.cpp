#include "tenrank/cyclotomic.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <string>

#include "tenrank/error.hpp"

namespace tenrank {
namespace {

struct FieldTable {
  int order = 1;
  int phi = 1;
  std::vector<std::int64_t> poly;                 // Phi_m, monic, lowest degree first
  std::vector<std::vector<std::int64_t>> power;   // x^k mod Phi_m for 0 <= k < m
};

std::int64_t checked(__int128 v) {
  if (v > INT64_MAX || v < -INT64_MAX) throw Error(ErrorCode::BadSpec, "cyclotomic table coefficient overflow");
  return static_cast<std::int64_t>(v);
}

std::vector<int> divisors(int m) {
  std::vector<int> out;
  for (int k = 1; k <= m; ++k)
    if (m % k == 0) out.push_back(k);
  return out;
}

const FieldTable& table(int m);

std::unique_ptr<FieldTable> build_table(int m) {
  auto t = std::make_unique<FieldTable>();
  t->order = m;
  // x^m - 1 divided by Phi_k for all proper divisors k.
  std::vector<std::int64_t> num(static_cast<std::size_t>(m) + 1, 0);
  num[0] = -1;
  num[static_cast<std::size_t>(m)] = 1;
  for (int k : divisors(m)) {
    if (k == m) continue;
    const auto& div = table(k).poly;
    std::size_t dn = div.size() - 1;
    std::size_t nn = num.size() - 1;
    std::vector<std::int64_t> quot(nn - dn + 1, 0);
    for (std::size_t i = nn + 1; i-- > dn;) {
      std::int64_t c = num[i];
      if (c == 0) continue;
      quot[i - dn] = c;
      for (std::size_t j = 0; j <= dn; ++j) num[i - dn + j] = checked(static_cast<__int128>(num[i - dn + j]) - static_cast<__int128>(c) * div[j]);
    }
    num = std::move(quot);
  }
  t->poly = std::move(num);
  t->phi = static_cast<int>(t->poly.size()) - 1;
  const auto phi = static_cast<std::size_t>(t->phi);
  t->power.reserve(static_cast<std::size_t>(m));
  std::vector<std::int64_t> cur(phi, 0);
  cur[0] = 1;
  for (int k = 0; k < m; ++k) {
    t->power.push_back(cur);
    std::int64_t top = cur[phi - 1];
    for (std::size_t i = phi; i-- > 1;) cur[i] = cur[i - 1];
    cur[0] = 0;
    if (top != 0)
      for (std::size_t i = 0; i < phi; ++i) cur[i] = checked(static_cast<__int128>(cur[i]) - static_cast<__int128>(top) * t->poly[i]);
  }
  return t;
}

const FieldTable& table(int m) {
  static std::mutex mu;
  static std::map<int, std::unique_ptr<FieldTable>> cache;
  if (m < 1 || m > kMaxCyclotomicOrder)
    throw Error(ErrorCode::BadSpec, "cyclotomic order " + std::to_string(m) + " outside [1, " + std::to_string(kMaxCyclotomicOrder) + "]");
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(m);
    if (it != cache.end()) return *it->second;
  }
  auto built = build_table(m);
  std::lock_guard<std::mutex> lock(mu);
  auto [it, inserted] = cache.emplace(m, std::move(built));
  return *it->second;
}

int lcm_order(int a, int b) {
  long long l = std::lcm(static_cast<long long>(a), static_cast<long long>(b));
  if (l > kMaxCyclotomicOrder) throw Error(ErrorCode::BadSpec, "lifted cyclotomic order " + std::to_string(l) + " too large");
  return static_cast<int>(l);
}

int mod(std::int64_t k, int m) {
  std::int64_t r = k % m;
  return static_cast<int>(r < 0 ? r + m : r);
}

void add_scaled(std::vector<Rational>& acc, const std::vector<std::int64_t>& v, const Rational& c) {
  for (std::size_t j = 0; j < v.size(); ++j)
    if (v[j] != 0) acc[j] += c * Rational(v[j]);
}

// Dense polynomial helpers over Q, lowest degree first, no trailing zeros.
using QPoly = std::vector<Rational>;

void trim(QPoly& p) {
  while (!p.empty() && p.back().is_zero()) p.pop_back();
}

QPoly poly_sub(const QPoly& a, const QPoly& b) {
  QPoly out(std::max(a.size(), b.size()));
  for (std::size_t i = 0; i < a.size(); ++i) out[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) out[i] -= b[i];
  trim(out);
  return out;
}

QPoly poly_mul(const QPoly& a, const QPoly& b) {
  if (a.empty() || b.empty()) return {};
  QPoly out(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.size(); ++j)
      if (!b[j].is_zero()) out[i + j] += a[i] * b[j];
  }
  trim(out);
  return out;
}

void poly_divmod(const QPoly& a, const QPoly& b, QPoly& q, QPoly& r) {
  r = a;
  q.assign(a.size() >= b.size() ? a.size() - b.size() + 1 : 0, Rational());
  Rational lead_inv = b.back().inverse();
  while (!r.empty() && r.size() >= b.size()) {
    std::size_t shift = r.size() - b.size();
    Rational c = r.back() * lead_inv;
    q[shift] = c;
    for (std::size_t j = 0; j < b.size(); ++j) r[shift + j] -= c * b[j];
    trim(r);
  }
  trim(q);
}

}  // namespace

int euler_phi(int m) { return table(m).phi; }

std::vector<std::int64_t> cyclotomic_polynomial(int m) { return table(m).poly; }

Cyclotomic Cyclotomic::root(int m, std::int64_t k) {
  const FieldTable& t = table(m);
  const auto& pw = t.power[static_cast<std::size_t>(mod(k, m))];
  std::vector<Rational> coeffs(pw.begin(), pw.end());
  Cyclotomic out(m, std::move(coeffs));
  out.normalize();
  return out;
}

Cyclotomic Cyclotomic::from_coeffs(int m, std::vector<Rational> coeffs) {
  if (static_cast<int>(coeffs.size()) != table(m).phi)
    throw Error(ErrorCode::BadSpec, "coefficient count does not match phi(" + std::to_string(m) + ")");
  Cyclotomic out(m, std::move(coeffs));
  out.normalize();
  return out;
}

Cyclotomic Cyclotomic::from_root_terms(int m, std::span<const RootTerm> terms) {
  const FieldTable& t = table(m);
  std::vector<Rational> acc(static_cast<std::size_t>(t.phi));
  for (const auto& term : terms) {
    if (term.coeff.is_zero()) continue;
    int e = mod(term.exponent, m);
    if (e < t.phi) {
      acc[static_cast<std::size_t>(e)] += term.coeff;
    } else {
      add_scaled(acc, t.power[static_cast<std::size_t>(e)], term.coeff);
    }
  }
  Cyclotomic out(m, std::move(acc));
  out.normalize();
  return out;
}

void Cyclotomic::normalize() {
  if (order_ == 2) order_ = 1;
  if (order_ == 1) {
    coeffs_.resize(1);
    return;
  }
  for (std::size_t i = 1; i < coeffs_.size(); ++i)
    if (!coeffs_[i].is_zero()) return;
  order_ = 1;
  coeffs_.resize(1);
}

bool Cyclotomic::is_zero() const {
  for (const auto& c : coeffs_)
    if (!c.is_zero()) return false;
  return true;
}

const Rational& Cyclotomic::to_rational() const {
  if (order_ != 1) throw Error(ErrorCode::BadSpec, "cyclotomic element is not rational");
  return coeffs_[0];
}

std::vector<RootTerm> Cyclotomic::root_terms(int m) const {
  if (m % order_ != 0) throw Error(ErrorCode::BadSpec, "root_terms target order is not a multiple of the element order");
  int f = m / order_;
  std::vector<RootTerm> out;
  for (std::size_t k = 0; k < coeffs_.size(); ++k)
    if (!coeffs_[k].is_zero()) out.push_back({static_cast<int>(k) * f, coeffs_[k]});
  return out;
}

std::vector<RootTerm> Cyclotomic::sparse_root_terms(int m) const {
  std::vector<RootTerm> dense = root_terms(m);
  if (dense.size() <= 1) return dense;
  for (int k = 1; k < order_; ++k) {
    Cyclotomic x = *this * root(order_, -k);
    if (x.is_rational()) return {RootTerm{k * (m / order_), x.coeffs_[0]}};
  }
  return dense;
}

Cyclotomic Cyclotomic::lifted(int m) const {
  if (m == order_) return *this;
  if (m % order_ != 0) throw Error(ErrorCode::BadSpec, "cannot lift order " + std::to_string(order_) + " to " + std::to_string(m));
  const FieldTable& t = table(m);
  std::vector<Rational> acc(static_cast<std::size_t>(t.phi));
  int f = m / order_;
  for (std::size_t k = 0; k < coeffs_.size(); ++k) {
    if (coeffs_[k].is_zero()) continue;
    int e = static_cast<int>(k) * f;
    if (e < t.phi) {
      acc[static_cast<std::size_t>(e)] += coeffs_[k];
    } else {
      add_scaled(acc, t.power[static_cast<std::size_t>(e % m)], coeffs_[k]);
    }
  }
  // Deliberately not normalized: callers want the order-m view.
  return Cyclotomic(m, std::move(acc));
}

Cyclotomic Cyclotomic::minimal() const {
  if (order_ == 1) return *this;
  const FieldTable& big = table(order_);
  for (int k : divisors(order_)) {
    if (k == order_) break;
    if (k == 1 || k % 4 == 2) continue;
    const FieldTable& small = table(k);
    int f = order_ / k;
    // Solve sum_j y_j zeta_k^j = *this in the order_ power basis.
    const auto rows = static_cast<std::size_t>(big.phi);
    const auto cols = static_cast<std::size_t>(small.phi);
    std::vector<std::vector<Rational>> aug(rows, std::vector<Rational>(cols + 1));
    for (std::size_t j = 0; j < cols; ++j) {
      const auto& col = big.power[(j * static_cast<std::size_t>(f)) % static_cast<std::size_t>(order_)];
      for (std::size_t i = 0; i < rows; ++i) aug[i][j] = Rational(col[i]);
    }
    for (std::size_t i = 0; i < rows; ++i) aug[i][cols] = coeffs_[i];
    std::size_t rank = 0;
    std::vector<std::size_t> pivot_col;
    for (std::size_t c = 0; c < cols && rank < rows; ++c) {
      std::size_t p = rank;
      while (p < rows && aug[p][c].is_zero()) ++p;
      if (p == rows) continue;
      std::swap(aug[p], aug[rank]);
      Rational inv = aug[rank][c].inverse();
      for (std::size_t cc = c; cc <= cols; ++cc) aug[rank][cc] *= inv;
      for (std::size_t r = 0; r < rows; ++r) {
        if (r == rank || aug[r][c].is_zero()) continue;
        Rational factor = aug[r][c];
        for (std::size_t cc = c; cc <= cols; ++cc) aug[r][cc] -= factor * aug[rank][cc];
      }
      pivot_col.push_back(c);
      ++rank;
    }
    bool consistent = true;
    for (std::size_t r = rank; r < rows; ++r)
      if (!aug[r][cols].is_zero()) consistent = false;
    if (!consistent) continue;
    std::vector<Rational> y(cols);
    for (std::size_t r = 0; r < rank; ++r) y[pivot_col[r]] = aug[r][cols];
    return from_coeffs(k, std::move(y));
  }
  return *this;
}

Cyclotomic Cyclotomic::inverse() const {
  if (is_zero()) throw Error(ErrorCode::DivisionByZero, "inverse of cyclotomic zero");
  if (order_ == 1) return Cyclotomic(coeffs_[0].inverse());
  const FieldTable& t = table(order_);
  QPoly modulus(t.poly.begin(), t.poly.end());
  QPoly old_r = coeffs_;
  trim(old_r);
  QPoly r = modulus;
  QPoly old_s{Rational(1)};
  QPoly s;
  while (!r.empty()) {
    QPoly q, rem;
    poly_divmod(old_r, r, q, rem);
    old_r = std::exchange(r, rem);
    QPoly next_s = poly_sub(old_s, poly_mul(q, s));
    old_s = std::exchange(s, next_s);
  }
  // old_r is a nonzero constant because Phi_m is irreducible.
  Rational scale = old_r[0].inverse();
  QPoly q, inv;
  poly_divmod(old_s, modulus, q, inv);
  std::vector<Rational> coeffs(static_cast<std::size_t>(t.phi));
  for (std::size_t i = 0; i < inv.size(); ++i) coeffs[i] = inv[i] * scale;
  Cyclotomic out(order_, std::move(coeffs));
  out.normalize();
  return out;
}

Cyclotomic Cyclotomic::operator-() const {
  Cyclotomic out = *this;
  for (auto& c : out.coeffs_) c = -c;
  return out;
}

Cyclotomic operator+(const Cyclotomic& a, const Cyclotomic& b) {
  if (a.order_ == 1 && b.order_ == 1) return Cyclotomic(a.coeffs_[0] + b.coeffs_[0]);
  if (a.order_ == b.order_) {
    std::vector<Rational> c(a.coeffs_.size());
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = a.coeffs_[i] + b.coeffs_[i];
    Cyclotomic out(a.order_, std::move(c));
    out.normalize();
    return out;
  }
  int m = lcm_order(a.order_, b.order_);
  return a.lifted(m) + b.lifted(m);
}

Cyclotomic operator-(const Cyclotomic& a, const Cyclotomic& b) { return a + (-b); }

Cyclotomic operator*(const Cyclotomic& a, const Cyclotomic& b) {
  if (a.order_ == 1 || b.order_ == 1) {
    const Cyclotomic& scalar = a.order_ == 1 ? a : b;
    const Cyclotomic& other = a.order_ == 1 ? b : a;
    const Rational& s = scalar.coeffs_[0];
    if (s.is_zero()) return Cyclotomic();
    if (s.is_one()) return other;
    Cyclotomic out = other;
    for (auto& c : out.coeffs_) c *= s;
    return out;
  }
  if (a.order_ != b.order_) {
    int m = lcm_order(a.order_, b.order_);
    return a.lifted(m) * b.lifted(m);
  }
  const FieldTable& t = table(a.order_);
  const auto phi = static_cast<std::size_t>(t.phi);
  std::vector<Rational> prod(2 * phi - 1);
  for (std::size_t i = 0; i < phi; ++i) {
    if (a.coeffs_[i].is_zero()) continue;
    for (std::size_t j = 0; j < phi; ++j)
      if (!b.coeffs_[j].is_zero()) prod[i + j] += a.coeffs_[i] * b.coeffs_[j];
  }
  std::vector<Rational> out(prod.begin(), prod.begin() + static_cast<std::ptrdiff_t>(phi));
  for (std::size_t k = phi; k < prod.size(); ++k)
    if (!prod[k].is_zero()) add_scaled(out, t.power[k % static_cast<std::size_t>(t.order)], prod[k]);
  Cyclotomic res(a.order_, std::move(out));
  res.normalize();
  return res;
}

bool operator==(const Cyclotomic& a, const Cyclotomic& b) {
  if (a.order_ == b.order_) return a.coeffs_ == b.coeffs_;
  // Orders differ only between a canonical value and a lifted() view, or
  // between two values that really are different.
  int m = lcm_order(a.order_, b.order_);
  return a.lifted(m).coeffs_ == b.lifted(m).coeffs_;
}

Rational root_filter_sum(int r, std::int64_t q) {
  if (r < 1) throw Error(ErrorCode::BadSpec, "root_filter_sum needs r >= 1");
  std::vector<RootTerm> terms;
  terms.reserve(static_cast<std::size_t>(r));
  for (int p = 0; p < r; ++p) terms.push_back({mod(static_cast<std::int64_t>(p) * q, r), Rational(1)});
  return Cyclotomic::from_root_terms(r, terms).to_rational();
}

}  // namespace tenrank
