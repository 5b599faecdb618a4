#pragma once

#include <map>
#include <utility>

#include "tenrank/cyclotomic.hpp"

namespace tenrank {

/// Laurent polynomial in eps with cyclotomic coefficients. Zero coefficients
/// are never stored; the empty map is 0.
class EpsLaurent {
 public:
  EpsLaurent() = default;
  EpsLaurent(const Cyclotomic& c);  // NOLINT
  EpsLaurent(const Rational& r) : EpsLaurent(Cyclotomic(r)) {}  // NOLINT
  EpsLaurent(std::int64_t v) : EpsLaurent(Cyclotomic(v)) {}  // NOLINT

  /// c * eps^k.
  static EpsLaurent monomial(int k, const Cyclotomic& c = Cyclotomic(1));

  const std::map<int, Cyclotomic>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == 0); }
  /// Coefficient of eps^k (zero when absent).
  Cyclotomic coeff(int k) const;

  /// (degree, coeff) of the lowest stored term; throws ZeroPolynomial on 0.
  std::pair<int, Cyclotomic> lowest() const;
  /// Highest stored exponent; throws ZeroPolynomial on 0.
  int highest() const;

  EpsLaurent scale_by_power(int k) const;
  /// Throws DivisionByZero unless the value is a nonzero monomial.
  EpsLaurent inverse() const;
  EpsLaurent operator-() const;

  friend EpsLaurent operator+(const EpsLaurent& a, const EpsLaurent& b);
  friend EpsLaurent operator-(const EpsLaurent& a, const EpsLaurent& b);
  friend EpsLaurent operator*(const EpsLaurent& a, const EpsLaurent& b);
  friend EpsLaurent operator/(const EpsLaurent& a, const EpsLaurent& b) { return a * b.inverse(); }
  friend bool operator==(const EpsLaurent& a, const EpsLaurent& b) { return a.terms_ == b.terms_; }

  EpsLaurent& operator+=(const EpsLaurent& o);
  EpsLaurent& operator-=(const EpsLaurent& o) { return *this += -o; }
  EpsLaurent& operator*=(const EpsLaurent& o) { return *this = *this * o; }

 private:
  std::map<int, Cyclotomic> terms_;
};

inline bool is_zero(const EpsLaurent& e) { return e.is_zero(); }

}  // namespace tenrank
