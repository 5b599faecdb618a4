#pragma once

// Reference computations that share no code with the library: complex
// floating-point evaluation of cyclotomics and decompositions, and exact
// rational rank by textbook elimination on mpq_class.

#include <algorithm>
#include <cmath>
#include <complex>
#include <map>
#include <numbers>
#include <random>
#include <vector>

#include <gmpxx.h>

#include "tenrank/decomposition.hpp"
#include "tenrank/tensor.hpp"

namespace oracle {

using cplx = std::complex<double>;

inline cplx eval(const tenrank::Cyclotomic& c) {
  cplx acc = 0;
  const int m = c.order();
  for (std::size_t k = 0; k < c.coeffs().size(); ++k)
    acc += c.coeffs()[k].to_double() * std::polar(1.0, 2 * std::numbers::pi * static_cast<double>(k) / m);
  return acc;
}

inline bool close(cplx a, cplx b, double tol = 1e-8) { return std::abs(a - b) <= tol * (1 + std::abs(a) + std::abs(b)); }

// Dense numeric expansion of sum scale * v_1 x ... x v_n.
inline std::vector<cplx> expand(const tenrank::CycDecomposition& dec) {
  const auto& shape = dec.shape;
  std::vector<cplx> out(shape.size());
  for (const auto& term : dec.terms) {
    std::vector<std::vector<cplx>> v;
    for (const auto& vec : term.vectors) {
      v.emplace_back();
      for (const auto& x : vec) v.back().push_back(eval(x));
    }
    const cplx s = eval(term.scale);
    for (tenrank::Index lin = 0; lin < shape.size(); ++lin) {
      cplx p = s;
      for (int i = 0; i < shape.arity() && p != cplx(0); ++i) p *= v[static_cast<std::size_t>(i)][static_cast<std::size_t>(shape.digit(lin, i))];
      out[lin] += p;
    }
  }
  return out;
}

inline bool matches(const tenrank::CycTensor& t, const std::vector<cplx>& dense) {
  std::vector<cplx> ref(t.shape().size());
  for (const auto& [k, v] : t.entries()) ref[k] = eval(v);
  for (std::size_t k = 0; k < ref.size(); ++k)
    if (!close(ref[k], dense[k])) return false;
  return true;
}

inline int rank(std::vector<std::vector<mpq_class>> a) {
  int r = 0;
  const std::size_t rows = a.size(), cols = rows ? a[0].size() : 0;
  for (std::size_t c = 0; c < cols && static_cast<std::size_t>(r) < rows; ++c) {
    std::size_t p = static_cast<std::size_t>(r);
    while (p < rows && a[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(a[p], a[static_cast<std::size_t>(r)]);
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == static_cast<std::size_t>(r) || a[i][c] == 0) continue;
      mpq_class f = a[i][c] / a[static_cast<std::size_t>(r)][c];
      for (std::size_t j = c; j < cols; ++j) a[i][j] -= f * a[static_cast<std::size_t>(r)][j];
    }
    ++r;
  }
  return r;
}

// Flattening rank of a rational tensor with `rows` as the row factors.
inline int flattening_rank(const tenrank::CycTensor& t, const std::vector<int>& rows) {
  const auto& s = t.shape();
  std::vector<int> cols;
  for (int i = 0; i < s.arity(); ++i)
    if (std::find(rows.begin(), rows.end(), i) == rows.end()) cols.push_back(i);
  auto size_of = [&](const std::vector<int>& f) {
    std::size_t n = 1;
    for (int i : f) n *= static_cast<std::size_t>(s.dim(i));
    return n;
  };
  auto pos = [&](tenrank::Index lin, const std::vector<int>& f) {
    std::size_t p = 0;
    for (int i : f) p = p * static_cast<std::size_t>(s.dim(i)) + static_cast<std::size_t>(s.digit(lin, i));
    return p;
  };
  std::vector<std::vector<mpq_class>> m(size_of(rows), std::vector<mpq_class>(size_of(cols)));
  for (const auto& [k, v] : t.entries()) m[pos(k, rows)][pos(k, cols)] = v.to_rational().to_mpq();
  return rank(std::move(m));
}

inline tenrank::Rational small_rational(std::mt19937_64& rng, int span = 5) {
  std::uniform_int_distribution<int> num(-span, span), den(1, 3);
  return tenrank::Rational(num(rng), den(rng));
}

inline tenrank::Cyclotomic random_cyclotomic(std::mt19937_64& rng, int order) {
  std::vector<tenrank::RootTerm> terms;
  std::uniform_int_distribution<int> count(1, 3), expo(0, order - 1);
  for (int i = count(rng); i > 0; --i) terms.push_back({expo(rng), small_rational(rng)});
  return tenrank::Cyclotomic::from_root_terms(order, terms);
}

inline tenrank::CycMatrix random_matrix(std::mt19937_64& rng, int rows, int cols, int span = 3) {
  tenrank::CycMatrix m(rows, cols);
  std::uniform_int_distribution<int> v(-span, span);
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) m(r, c) = tenrank::Cyclotomic(v(rng));
  return m;
}

inline tenrank::CycTensor random_tensor(std::mt19937_64& rng, const tenrank::Shape& shape, double density = 0.5) {
  std::bernoulli_distribution keep(density);
  std::uniform_int_distribution<int> v(-3, 3);
  std::vector<tenrank::CycTensor::Entry> entries;
  for (tenrank::Index k = 0; k < shape.size(); ++k)
    if (keep(rng)) entries.emplace_back(k, tenrank::Cyclotomic(v(rng)));
  return tenrank::CycTensor::from_linear(shape, std::move(entries));
}

}  // namespace oracle
