#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "tenrank/rational.hpp"

namespace tenrank {

/// Largest cyclotomic order the field tables are built for.
inline constexpr int kMaxCyclotomicOrder = 8192;

int euler_phi(int m);

/// Integer coefficients of the m-th cyclotomic polynomial, lowest degree first.
/// Built by dividing x^m - 1 by Phi_k for every proper divisor k of m.
std::vector<std::int64_t> cyclotomic_polynomial(int m);

/// One term `coeff * zeta_m^exponent` of an unreduced sum of roots of unity.
struct RootTerm {
  int exponent;
  Rational coeff;
};

/// Element of Q(zeta_m) in the power basis 1, z, ..., z^(phi(m)-1) reduced
/// modulo Phi_m.
///
/// Elements that are rational are always stored with order 1, and order 2 is
/// folded into order 1 (Q(zeta_2) = Q). Arithmetic between different orders
/// lifts both operands to the lcm of the orders first.
class Cyclotomic {
 public:
  Cyclotomic() : order_(1), coeffs_(1) {}
  Cyclotomic(const Rational& value) : order_(1), coeffs_{value} {}  // NOLINT
  Cyclotomic(std::int64_t value) : order_(1), coeffs_{Rational(value)} {}  // NOLINT

  /// zeta_m^k.
  static Cyclotomic root(int m, std::int64_t k);
  /// Takes power-basis coefficients; `coeffs.size()` must equal phi(m).
  static Cyclotomic from_coeffs(int m, std::vector<Rational> coeffs);
  /// Reduces sum_t coeff_t * zeta_m^exponent_t modulo Phi_m.
  static Cyclotomic from_root_terms(int m, std::span<const RootTerm> terms);

  int order() const { return order_; }
  const std::vector<Rational>& coeffs() const { return coeffs_; }

  bool is_zero() const;
  bool is_rational() const { return order_ == 1; }
  bool is_one() const { return order_ == 1 && coeffs_[0].is_one(); }
  /// Throws BadSpec when the element is not rational.
  const Rational& to_rational() const;

  /// Same element viewed in Q(zeta_m); m must be a multiple of order().
  Cyclotomic lifted(int m) const;
  /// Same element in the smallest Q(zeta_k) that contains it.
  Cyclotomic minimal() const;
  /// Nonzero power-basis terms with exponents scaled to the given order.
  std::vector<RootTerm> root_terms(int m) const;
  /// Like root_terms, but collapses c * zeta^k (stored with up to phi terms
  /// after reduction) back to a single term when possible.
  std::vector<RootTerm> sparse_root_terms(int m) const;

  Cyclotomic inverse() const;
  Cyclotomic operator-() const;

  friend Cyclotomic operator+(const Cyclotomic& a, const Cyclotomic& b);
  friend Cyclotomic operator-(const Cyclotomic& a, const Cyclotomic& b);
  friend Cyclotomic operator*(const Cyclotomic& a, const Cyclotomic& b);
  friend Cyclotomic operator/(const Cyclotomic& a, const Cyclotomic& b) { return a * b.inverse(); }
  friend bool operator==(const Cyclotomic& a, const Cyclotomic& b);

  Cyclotomic& operator+=(const Cyclotomic& o) { return *this = *this + o; }
  Cyclotomic& operator-=(const Cyclotomic& o) { return *this = *this - o; }
  Cyclotomic& operator*=(const Cyclotomic& o) { return *this = *this * o; }

 private:
  Cyclotomic(int order, std::vector<Rational> coeffs) : order_(order), coeffs_(std::move(coeffs)) {}
  void normalize();

  int order_;
  std::vector<Rational> coeffs_;
};

inline bool is_zero(const Rational& r) { return r.is_zero(); }
inline bool is_zero(const Cyclotomic& c) { return c.is_zero(); }

/// Sum over p = 0..r-1 of zeta_r^(p q). Equals r when r divides q and 0 otherwise.
Rational root_filter_sum(int r, std::int64_t q);

}  // namespace tenrank
