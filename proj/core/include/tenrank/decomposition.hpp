#pragma once

#include <string>
#include <vector>

#include "tenrank/families.hpp"

namespace tenrank {

/// scale * v_1 x ... x v_n
template <class S>
struct RankOneTerm {
  S scale;
  std::vector<std::vector<S>> vectors;
};

template <class S>
struct Decomposition {
  Shape shape;
  std::vector<RankOneTerm<S>> terms;
  /// How the decomposition was obtained; carried into certificate traces.
  std::string note;

  int size() const { return static_cast<int>(terms.size()); }
};

using CycDecomposition = Decomposition<Cyclotomic>;
using EpsDecomposition = Decomposition<EpsLaurent>;

/// Throws ShapeMismatch when a term has the wrong arity or vector length.
template <class S>
void check_shape(const Decomposition<S>& dec);

/// Sum of all terms as an exact tensor.
CycTensor expand(const CycDecomposition& dec);
EpsTensor expand(const EpsDecomposition& dec);

/// Exact equality of the expansion with t. Throws ShapeMismatch if shapes differ.
bool verify_decomposition(const CycTensor& t, const CycDecomposition& dec);
bool verify_decomposition(const EpsTensor& t, const EpsDecomposition& dec);

/// Explicit summands of GHZ (d terms), W (n terms) and N ((n-1)(d-1)+1 terms).
CycDecomposition decompose_trivial(Family family, int d, int n);
/// One term per stored entry.
CycDecomposition decompose_support(const CycTensor& t);
/// r = (n-1)(d-1)+1 symmetric terms over Q(zeta_r).
CycDecomposition decompose_l(int d, int n);
/// a+1 symmetric terms summing to DICKE(a+b, b); requires a >= b >= 1.
CycDecomposition decompose_monomial_waring(int a, int b);
/// (n-1)(d-1)+1 terms for M or M'. Always verified before returning.
CycDecomposition decompose_m(int d, int n, Family variant);
/// Constructor for any family that has one; throws BadSpec for NONSYM4.
CycDecomposition decompose_family(const FamilySpec& spec);

/// Applies A_i to the i-th vector of every term and drops terms that vanish.
template <class S>
Decomposition<S> map_decomposition(const LocalMap<S>& m, const Decomposition<S>& dec);

EpsDecomposition to_eps(const CycDecomposition& dec);

/// Term-by-term products: |a| * |b| terms decomposing a (x) b, resp. a [x] b
/// (Kronecker, index j*d' + j' as in kronecker_product).
CycDecomposition tensor_product(const CycDecomposition& a, const CycDecomposition& b);
CycDecomposition kronecker_product(const CycDecomposition& a, const CycDecomposition& b);
/// |a| + |b| terms for the block direct sum.
CycDecomposition direct_sum(const CycDecomposition& a, const CycDecomposition& b);

}  // namespace tenrank
