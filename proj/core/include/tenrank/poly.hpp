#pragma once

#include <string>
#include <vector>

#include "tenrank/cyclotomic.hpp"

namespace tenrank {

/// Dense univariate polynomial over the cyclotomics, lowest degree first,
/// without trailing zeros (the zero polynomial has no coefficients).
class Poly {
 public:
  Poly() = default;
  Poly(const Cyclotomic& c);  // NOLINT
  Poly(std::int64_t c) : Poly(Cyclotomic(c)) {}  // NOLINT
  explicit Poly(std::vector<Cyclotomic> coeffs);

  /// The polynomial t.
  static Poly variable();

  const std::vector<Cyclotomic>& coeffs() const { return coeffs_; }
  bool is_zero() const { return coeffs_.empty(); }
  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_constant() const { return coeffs_.size() <= 1; }
  const Cyclotomic& leading() const;
  Cyclotomic eval(const Cyclotomic& t) const;

  Poly derivative() const;
  Poly monic() const;
  Poly operator-() const;
  std::string str() const;

  friend Poly operator+(const Poly& a, const Poly& b);
  friend Poly operator-(const Poly& a, const Poly& b);
  friend Poly operator*(const Poly& a, const Poly& b);
  friend bool operator==(const Poly& a, const Poly& b) { return a.coeffs_ == b.coeffs_; }

  Poly& operator+=(const Poly& o) { return *this = *this + o; }
  Poly& operator-=(const Poly& o) { return *this = *this - o; }
  Poly& operator*=(const Poly& o) { return *this = *this * o; }

 private:
  void trim();
  std::vector<Cyclotomic> coeffs_;
};

inline bool is_zero(const Poly& p) { return p.is_zero(); }

/// Throws ZeroPolynomial when dividing by 0.
void divmod(const Poly& a, const Poly& b, Poly& quot, Poly& rem);
/// Monic gcd; gcd(0, 0) = 0.
Poly gcd(const Poly& a, const Poly& b);
/// p / gcd(p, p'), monic. Its degree counts the distinct roots of p.
Poly squarefree_part(const Poly& p);

}  // namespace tenrank
