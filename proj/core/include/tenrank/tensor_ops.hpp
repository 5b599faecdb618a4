#pragma once

#include <unordered_map>
#include <vector>

#include "tenrank/linalg.hpp"
#include "tenrank/tensor.hpp"

namespace tenrank {

/// One matrix per factor; A_i is (out_i x in_i).
template <class S>
using LocalMap = std::vector<Matrix<S>>;
using CycLocalMap = LocalMap<Cyclotomic>;
using EpsLocalMap = LocalMap<EpsLaurent>;

inline EpsLocalMap to_eps(const CycLocalMap& m) {
  EpsLocalMap out;
  out.reserve(m.size());
  for (const auto& a : m) out.push_back(to_eps(a));
  return out;
}

template <class S>
Tensor<S> tensor_product(const Tensor<S>& a, const Tensor<S>& b) {
  std::vector<int> dims = a.shape().dims();
  dims.insert(dims.end(), b.shape().dims().begin(), b.shape().dims().end());
  Shape shape(std::move(dims));
  const Index block = b.shape().size();
  std::vector<typename Tensor<S>::Entry> out;
  out.reserve(a.nnz() * b.nnz());
  for (const auto& [ka, va] : a.entries())
    for (const auto& [kb, vb] : b.entries()) out.emplace_back(ka * block + kb, va * vb);
  return Tensor<S>::from_linear(std::move(shape), std::move(out));
}

/// Pairs factor i of a with factor i of b (index j*d'_i + j'); trailing
/// factors of b pass through. Requires arity(a) <= arity(b).
template <class S>
Tensor<S> kronecker_product(const Tensor<S>& a, const Tensor<S>& b) {
  const int na = a.arity();
  const int nb = b.arity();
  if (na > nb) throw Error(ErrorCode::ArityMismatch, "kronecker product needs arity(a) <= arity(b)");
  std::vector<int> dims = b.shape().dims();
  for (int i = 0; i < na; ++i) dims[static_cast<std::size_t>(i)] *= a.shape().dim(i);
  Shape shape(std::move(dims));
  std::vector<typename Tensor<S>::Entry> out;
  out.reserve(a.nnz() * b.nnz());
  for (const auto& [ka, va] : a.entries())
    for (const auto& [kb, vb] : b.entries()) {
      Index lin = 0;
      for (int i = 0; i < nb; ++i) {
        int j = b.shape().digit(kb, i);
        if (i < na) j += a.shape().digit(ka, i) * b.shape().dim(i);
        lin += static_cast<Index>(j) * shape.stride(i);
      }
      out.emplace_back(lin, va * vb);
    }
  return Tensor<S>::from_linear(std::move(shape), std::move(out));
}

/// Places t inside a larger shape with per-factor offsets.
template <class S>
Tensor<S> embed(const Tensor<S>& t, const Shape& target, const std::vector<int>& offsets) {
  if (target.arity() != t.arity() || static_cast<int>(offsets.size()) != t.arity())
    throw Error(ErrorCode::ArityMismatch, "embedding arity mismatch");
  for (int i = 0; i < t.arity(); ++i)
    if (offsets[static_cast<std::size_t>(i)] < 0 || offsets[static_cast<std::size_t>(i)] + t.shape().dim(i) > target.dim(i))
      throw Error(ErrorCode::DimMismatch, "embedded block does not fit in target shape");
  std::vector<typename Tensor<S>::Entry> out;
  out.reserve(t.nnz());
  for (const auto& [k, v] : t.entries()) {
    Index lin = 0;
    for (int i = 0; i < t.arity(); ++i)
      lin += static_cast<Index>(t.shape().digit(k, i) + offsets[static_cast<std::size_t>(i)]) * target.stride(i);
    out.emplace_back(lin, v);
  }
  return Tensor<S>::from_linear(target, std::move(out));
}

/// Canonical projection onto the block [offset_i, offset_i + size_i) of each factor.
template <class S>
Tensor<S> extract_block(const Tensor<S>& t, const std::vector<int>& offsets, const std::vector<int>& sizes) {
  if (static_cast<int>(offsets.size()) != t.arity() || static_cast<int>(sizes.size()) != t.arity())
    throw Error(ErrorCode::ArityMismatch, "block arity mismatch");
  Shape shape(sizes);
  std::vector<typename Tensor<S>::Entry> out;
  for (const auto& [k, v] : t.entries()) {
    Index lin = 0;
    bool inside = true;
    for (int i = 0; i < t.arity() && inside; ++i) {
      int j = t.shape().digit(k, i) - offsets[static_cast<std::size_t>(i)];
      if (j < 0 || j >= sizes[static_cast<std::size_t>(i)]) inside = false;
      else lin += static_cast<Index>(j) * shape.stride(i);
    }
    if (inside) out.emplace_back(lin, v);
  }
  return Tensor<S>::from_linear(std::move(shape), std::move(out));
}

/// Block-diagonal direct sum: a in [0, d_i), b in [d_i, d_i + d'_i).
template <class S>
Tensor<S> direct_sum(const Tensor<S>& a, const Tensor<S>& b) {
  if (a.arity() != b.arity()) throw Error(ErrorCode::ArityMismatch, "direct sum needs equal arity");
  std::vector<int> dims(static_cast<std::size_t>(a.arity()));
  for (int i = 0; i < a.arity(); ++i) dims[static_cast<std::size_t>(i)] = a.shape().dim(i) + b.shape().dim(i);
  Shape shape(std::move(dims));
  Tensor<S> ea = embed(a, shape, std::vector<int>(static_cast<std::size_t>(a.arity()), 0));
  Tensor<S> eb = embed(b, shape, a.shape().dims());
  return ea + eb;
}

/// Contracts factor i with the covector f; the result has arity n - 1.
template <class S>
Tensor<S> contract(const Tensor<S>& t, int i, const std::vector<S>& f) {
  if (i < 0 || i >= t.arity()) throw Error(ErrorCode::DimMismatch, "contraction factor out of range");
  if (static_cast<int>(f.size()) != t.shape().dim(i)) throw Error(ErrorCode::DimMismatch, "covector length does not match factor dimension");
  if (t.arity() == 1) throw Error(ErrorCode::ArityMismatch, "cannot contract the only factor");
  std::vector<int> dims = t.shape().dims();
  dims.erase(dims.begin() + i);
  Shape shape(std::move(dims));
  const Index stride = t.shape().stride(i);
  const auto di = static_cast<Index>(t.shape().dim(i));
  std::vector<typename Tensor<S>::Entry> out;
  for (const auto& [k, v] : t.entries()) {
    const auto& c = f[static_cast<std::size_t>(t.shape().digit(k, i))];
    if (is_zero(c)) continue;
    Index high = k / (stride * di);
    Index low = k % stride;
    out.emplace_back(high * stride + low, c * v);
  }
  return Tensor<S>::from_linear(std::move(shape), std::move(out));
}

/// Applies A to factor i.
template <class S>
Tensor<S> apply_factor(const Tensor<S>& t, int i, const Matrix<S>& a) {
  if (a.cols() != t.shape().dim(i)) throw Error(ErrorCode::DimMismatch, "local map input dimension does not match factor " + std::to_string(i));
  std::vector<int> dims = t.shape().dims();
  dims[static_cast<std::size_t>(i)] = a.rows();
  Shape shape(std::move(dims));
  const Index old_stride = t.shape().stride(i);
  const auto old_dim = static_cast<Index>(t.shape().dim(i));
  const Index new_stride = shape.stride(i);
  std::unordered_map<Index, S> acc;
  for (const auto& [k, v] : t.entries()) {
    int j = t.shape().digit(k, i);
    Index high = k / (old_stride * old_dim);
    Index low = k % old_stride;
    Index base = high * new_stride * static_cast<Index>(a.rows()) + low;
    for (int r = 0; r < a.rows(); ++r) {
      const S& c = a(r, j);
      if (is_zero(c)) continue;
      acc[base + static_cast<Index>(r) * new_stride] += c * v;
    }
  }
  std::vector<typename Tensor<S>::Entry> out(std::make_move_iterator(acc.begin()), std::make_move_iterator(acc.end()));
  return Tensor<S>::from_linear(std::move(shape), std::move(out));
}

template <class S>
Tensor<S> slocc_apply(const Tensor<S>& t, const LocalMap<S>& m) {
  if (static_cast<int>(m.size()) != t.arity()) throw Error(ErrorCode::DimMismatch, "local map has the wrong number of factors");
  Tensor<S> cur = t;
  for (int i = 0; i < t.arity(); ++i) cur = apply_factor(cur, i, m[static_cast<std::size_t>(i)]);
  return cur;
}

/// Moves factor perm[k] of t to position k.
template <class S>
Tensor<S> permute_factors(const Tensor<S>& t, const std::vector<int>& perm) {
  if (static_cast<int>(perm.size()) != t.arity()) throw Error(ErrorCode::ArityMismatch, "permutation length mismatch");
  std::vector<int> dims(perm.size());
  for (std::size_t k = 0; k < perm.size(); ++k) dims[k] = t.shape().dim(perm[k]);
  Shape shape(std::move(dims));
  std::vector<typename Tensor<S>::Entry> out;
  out.reserve(t.nnz());
  for (const auto& [key, v] : t.entries()) {
    Index lin = 0;
    for (std::size_t k = 0; k < perm.size(); ++k) lin += static_cast<Index>(t.shape().digit(key, perm[k])) * shape.stride(static_cast<int>(k));
    out.emplace_back(lin, v);
  }
  return Tensor<S>::from_linear(std::move(shape), std::move(out));
}

/// Flattening with rows indexed by `row_factors` (lexicographic in their
/// original order) and columns by the remaining factors. With `compress`,
/// all-zero rows and columns are dropped, which preserves the rank.
CycMatrix flatten(const CycTensor& t, const std::vector<int>& row_factors, bool compress = true);
int schmidt_rank(const CycTensor& t, const Bipartition& s);
int mode_rank(const CycTensor& t, int i);

struct MultilinearProfile {
  std::vector<int> ranks;
  std::vector<bool> concise;
  bool is_concise() const;
};
MultilinearProfile multilinear_profile(const CycTensor& t);

/// t restricted to the image of each mode flattening: core = (P_1 x ... x P_n) t
/// and t = (E_1 x ... x E_n) core, with P_i E_i = I.
struct ConciseCore {
  CycTensor core;
  CycLocalMap project;
  CycLocalMap embed;
};
ConciseCore concise_core(const CycTensor& t);

}  // namespace tenrank
