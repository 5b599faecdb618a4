#include "tenrank/poly.hpp"

#include "tenrank/error.hpp"
#include "tenrank/scalar_io.hpp"

namespace tenrank {

Poly::Poly(const Cyclotomic& c) {
  if (!c.is_zero()) coeffs_.push_back(c);
}

Poly::Poly(std::vector<Cyclotomic> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

Poly Poly::variable() { return Poly(std::vector<Cyclotomic>{Cyclotomic(0), Cyclotomic(1)}); }

void Poly::trim() {
  while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
}

const Cyclotomic& Poly::leading() const {
  if (coeffs_.empty()) throw Error(ErrorCode::ZeroPolynomial, "leading coefficient of the zero polynomial");
  return coeffs_.back();
}

Cyclotomic Poly::eval(const Cyclotomic& t) const {
  Cyclotomic acc;
  for (std::size_t i = coeffs_.size(); i-- > 0;) acc = acc * t + coeffs_[i];
  return acc;
}

Poly Poly::derivative() const {
  std::vector<Cyclotomic> out;
  for (std::size_t i = 1; i < coeffs_.size(); ++i) out.push_back(coeffs_[i] * Cyclotomic(static_cast<std::int64_t>(i)));
  return Poly(std::move(out));
}

Poly Poly::monic() const {
  if (coeffs_.empty()) return *this;
  Cyclotomic inv = coeffs_.back().inverse();
  std::vector<Cyclotomic> out;
  for (const auto& c : coeffs_) out.push_back(c * inv);
  return Poly(std::move(out));
}

Poly Poly::operator-() const {
  Poly out = *this;
  for (auto& c : out.coeffs_) c = -c;
  return out;
}

std::string Poly::str() const {
  if (coeffs_.empty()) return "0";
  std::string out;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (coeffs_[i].is_zero()) continue;
    std::string c = format_scalar(coeffs_[i]);
    std::string term = i == 0 ? c : "(" + c + ")*t^" + std::to_string(i);
    if (!out.empty()) out += " + ";
    out += term;
  }
  return out;
}

Poly operator+(const Poly& a, const Poly& b) {
  std::vector<Cyclotomic> out(std::max(a.coeffs_.size(), b.coeffs_.size()));
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) out[i] += a.coeffs_[i];
  for (std::size_t i = 0; i < b.coeffs_.size(); ++i) out[i] += b.coeffs_[i];
  return Poly(std::move(out));
}

Poly operator-(const Poly& a, const Poly& b) { return a + (-b); }

Poly operator*(const Poly& a, const Poly& b) {
  if (a.is_zero() || b.is_zero()) return Poly();
  std::vector<Cyclotomic> out(a.coeffs_.size() + b.coeffs_.size() - 1);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
    if (a.coeffs_[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j)
      if (!b.coeffs_[j].is_zero()) out[i + j] += a.coeffs_[i] * b.coeffs_[j];
  }
  return Poly(std::move(out));
}

void divmod(const Poly& a, const Poly& b, Poly& quot, Poly& rem) {
  if (b.is_zero()) throw Error(ErrorCode::ZeroPolynomial, "polynomial division by zero");
  std::vector<Cyclotomic> r = a.coeffs();
  const auto& bc = b.coeffs();
  std::vector<Cyclotomic> q(r.size() >= bc.size() ? r.size() - bc.size() + 1 : 0);
  Cyclotomic lead_inv = bc.back().inverse();
  while (r.size() >= bc.size()) {
    if (r.back().is_zero()) {
      r.pop_back();
      continue;
    }
    std::size_t shift = r.size() - bc.size();
    Cyclotomic c = r.back() * lead_inv;
    q[shift] = c;
    for (std::size_t j = 0; j < bc.size(); ++j) r[shift + j] -= c * bc[j];
    r.pop_back();
  }
  quot = Poly(std::move(q));
  rem = Poly(std::move(r));
}

Poly gcd(const Poly& a, const Poly& b) {
  Poly x = a;
  Poly y = b;
  while (!y.is_zero()) {
    Poly q, r;
    divmod(x, y, q, r);
    x = std::move(y);
    y = std::move(r);
  }
  return x.monic();
}

Poly squarefree_part(const Poly& p) {
  if (p.degree() <= 0) return p.monic();
  Poly g = gcd(p, p.derivative());
  Poly q, r;
  divmod(p, g, q, r);
  return q.monic();
}

}  // namespace tenrank
