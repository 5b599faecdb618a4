#pragma once

#include <algorithm>
#include <span>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "tenrank/eps_laurent.hpp"
#include "tenrank/error.hpp"
#include "tenrank/shape.hpp"

namespace tenrank {

template <class S>
inline constexpr std::string_view scalar_kind = "?";
template <>
inline constexpr std::string_view scalar_kind<Cyclotomic> = "cyc";
template <>
inline constexpr std::string_view scalar_kind<EpsLaurent> = "eps";

/// Sparse tensor: a shape plus entries sorted by linear index, no zeros stored.
template <class S>
class Tensor {
 public:
  using Scalar = S;
  using Entry = std::pair<Index, S>;

  Tensor() = default;
  explicit Tensor(Shape shape) : shape_(std::move(shape)) {}

  /// Canonicalizes arbitrary (linear index, value) pairs: duplicates are
  /// summed and zeros dropped. Indices must already be inside the shape.
  static Tensor from_linear(Shape shape, std::vector<Entry> entries) {
    Tensor t(std::move(shape));
    std::stable_sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) { return a.first < b.first; });
    for (auto& e : entries) {
      if (e.first >= t.shape_.size()) throw Error(ErrorCode::IndexOutOfShape, "linear index outside shape " + t.shape_.str());
      if (!t.entries_.empty() && t.entries_.back().first == e.first) {
        t.entries_.back().second += e.second;
        if (is_zero(t.entries_.back().second)) t.entries_.pop_back();
      } else if (!is_zero(e.second)) {
        t.entries_.push_back(std::move(e));
      }
    }
    return t;
  }

  /// Multi-index form of from_linear; throws IndexOutOfShape.
  static Tensor from_entries(Shape shape, const std::vector<std::pair<std::vector<int>, S>>& entries) {
    std::vector<Entry> lin;
    lin.reserve(entries.size());
    for (const auto& [idx, v] : entries) lin.emplace_back(shape.linear(idx), v);
    return from_linear(std::move(shape), std::move(lin));
  }

  const Shape& shape() const { return shape_; }
  int arity() const { return shape_.arity(); }
  const std::vector<Entry>& entries() const { return entries_; }
  std::size_t nnz() const { return entries_.size(); }
  bool is_zero() const { return entries_.empty(); }

  S at_linear(Index lin) const {
    auto it = std::lower_bound(entries_.begin(), entries_.end(), lin, [](const Entry& e, Index k) { return e.first < k; });
    return it != entries_.end() && it->first == lin ? it->second : S();
  }
  S at(std::span<const int> idx) const { return at_linear(shape_.linear(idx)); }
  S at(std::initializer_list<int> idx) const { return at(std::span<const int>(idx.begin(), idx.size())); }

  Tensor scaled(const S& c) const {
    Tensor out(shape_);
    if (::tenrank::is_zero(c)) return out;
    out.entries_.reserve(entries_.size());
    for (const auto& [k, v] : entries_) {
      S p = v * c;
      if (!::tenrank::is_zero(p)) out.entries_.emplace_back(k, std::move(p));
    }
    return out;
  }

  friend Tensor operator+(const Tensor& a, const Tensor& b) {
    if (!(a.shape_ == b.shape_)) throw Error(ErrorCode::ShapeMismatch, "adding tensors of shape " + a.shape_.str() + " and " + b.shape_.str());
    std::vector<Entry> all(a.entries_);
    all.insert(all.end(), b.entries_.begin(), b.entries_.end());
    return from_linear(a.shape_, std::move(all));
  }
  friend Tensor operator-(const Tensor& a, const Tensor& b) { return a + b.scaled(S(-1)); }

  friend bool operator==(const Tensor& a, const Tensor& b) { return a.shape_ == b.shape_ && a.entries_ == b.entries_; }

 private:
  static bool is_zero(const S& s) { return ::tenrank::is_zero(s); }

  Shape shape_;
  std::vector<Entry> entries_;
};

using CycTensor = Tensor<Cyclotomic>;
using EpsTensor = Tensor<EpsLaurent>;

/// A tensor whose scalar kind is only known at runtime (files, CLI).
using AnyTensor = std::variant<CycTensor, EpsTensor>;

inline EpsTensor to_eps(const CycTensor& t) {
  std::vector<EpsTensor::Entry> entries;
  entries.reserve(t.nnz());
  for (const auto& [k, v] : t.entries()) entries.emplace_back(k, EpsLaurent(v));
  return EpsTensor::from_linear(t.shape(), std::move(entries));
}

/// Coefficient tensor of eps^k.
inline CycTensor eps_coefficient(const EpsTensor& t, int k) {
  std::vector<CycTensor::Entry> entries;
  for (const auto& [idx, v] : t.entries()) {
    Cyclotomic c = v.coeff(k);
    if (!c.is_zero()) entries.emplace_back(idx, std::move(c));
  }
  return CycTensor::from_linear(t.shape(), std::move(entries));
}

/// Throws ScalarKindMismatch unless `any` holds a Tensor<S>.
template <class S>
const Tensor<S>& expect_kind(const AnyTensor& any) {
  if (const auto* p = std::get_if<Tensor<S>>(&any)) return *p;
  throw Error(ErrorCode::ScalarKindMismatch, "expected a '" + std::string(scalar_kind<S>) + "' tensor");
}

}  // namespace tenrank
