#include "tenrank/eps_laurent.hpp"

#include "tenrank/error.hpp"

namespace tenrank {

EpsLaurent::EpsLaurent(const Cyclotomic& c) {
  if (!c.is_zero()) terms_.emplace(0, c);
}

EpsLaurent EpsLaurent::monomial(int k, const Cyclotomic& c) {
  EpsLaurent out;
  if (!c.is_zero()) out.terms_.emplace(k, c);
  return out;
}

Cyclotomic EpsLaurent::coeff(int k) const {
  auto it = terms_.find(k);
  return it == terms_.end() ? Cyclotomic() : it->second;
}

std::pair<int, Cyclotomic> EpsLaurent::lowest() const {
  if (terms_.empty()) throw Error(ErrorCode::ZeroPolynomial, "lowest term of zero Laurent polynomial");
  return *terms_.begin();
}

int EpsLaurent::highest() const {
  if (terms_.empty()) throw Error(ErrorCode::ZeroPolynomial, "highest term of zero Laurent polynomial");
  return terms_.rbegin()->first;
}

EpsLaurent EpsLaurent::scale_by_power(int k) const {
  EpsLaurent out;
  for (const auto& [e, c] : terms_) out.terms_.emplace_hint(out.terms_.end(), e + k, c);
  return out;
}

EpsLaurent EpsLaurent::inverse() const {
  if (terms_.empty()) throw Error(ErrorCode::DivisionByZero, "inverse of zero Laurent polynomial");
  if (terms_.size() != 1) throw Error(ErrorCode::DivisionByZero, "only monomials are invertible in the Laurent ring");
  const auto& [e, c] = *terms_.begin();
  return monomial(-e, c.inverse());
}

EpsLaurent EpsLaurent::operator-() const {
  EpsLaurent out = *this;
  for (auto& [e, c] : out.terms_) c = -c;
  return out;
}

EpsLaurent& EpsLaurent::operator+=(const EpsLaurent& o) {
  for (const auto& [e, c] : o.terms_) {
    auto [it, inserted] = terms_.emplace(e, c);
    if (inserted) continue;
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
  return *this;
}

EpsLaurent operator+(const EpsLaurent& a, const EpsLaurent& b) {
  EpsLaurent out = a;
  out += b;
  return out;
}

EpsLaurent operator-(const EpsLaurent& a, const EpsLaurent& b) { return a + (-b); }

EpsLaurent operator*(const EpsLaurent& a, const EpsLaurent& b) {
  EpsLaurent out;
  for (const auto& [ea, ca] : a.terms_)
    for (const auto& [eb, cb] : b.terms_) out += EpsLaurent::monomial(ea + eb, ca * cb);
  return out;
}

}  // namespace tenrank
