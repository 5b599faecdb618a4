#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace tenrank {

/// Row-major linear position of a multi-index. Row-major order coincides with
/// lexicographic order of multi-indices, which is the canonical entry order.
using Index = std::uint64_t;

class Shape {
 public:
  Shape() = default;
  /// Throws BadSpec on an empty list, a dim < 1, or a total size >= 2^62.
  explicit Shape(std::vector<int> dims);
  Shape(std::initializer_list<int> dims) : Shape(std::vector<int>(dims)) {}

  /// Shape with n factors of dimension d.
  static Shape uniform(int d, int n);

  int arity() const { return static_cast<int>(dims_.size()); }
  const std::vector<int>& dims() const { return dims_; }
  int dim(int i) const { return dims_[static_cast<std::size_t>(i)]; }
  Index stride(int i) const { return strides_[static_cast<std::size_t>(i)]; }
  Index size() const { return size_; }
  bool is_uniform() const;

  /// Throws IndexOutOfShape.
  Index linear(std::span<const int> idx) const;
  std::vector<int> multi(Index lin) const;
  int digit(Index lin, int i) const { return static_cast<int>((lin / strides_[static_cast<std::size_t>(i)]) % static_cast<Index>(dims_[static_cast<std::size_t>(i)])); }
  /// Replaces digit i of lin by v.
  Index with_digit(Index lin, int i, int v) const {
    return lin + (static_cast<Index>(v) - static_cast<Index>(digit(lin, i))) * strides_[static_cast<std::size_t>(i)];
  }

  std::string str() const;

  friend bool operator==(const Shape& a, const Shape& b) { return a.dims_ == b.dims_; }

 private:
  std::vector<int> dims_;
  std::vector<Index> strides_;
  Index size_ = 0;
};

/// Nonempty proper subset S of the factors {0, ..., n-1}.
class Bipartition {
 public:
  /// Throws BadSpec if members is empty, not proper, or out of range.
  Bipartition(int n, std::vector<int> members);

  int arity() const { return n_; }
  const std::vector<int>& members() const { return members_; }
  std::vector<int> complement() const;
  bool contains(int i) const;
  std::string str() const;

  /// All 2^(n-1)-1 bipartitions whose side contains factor 0, ordered by bitmask.
  static std::vector<Bipartition> all(int n);

  friend bool operator==(const Bipartition& a, const Bipartition& b) { return a.n_ == b.n_ && a.members_ == b.members_; }

 private:
  int n_;
  std::vector<int> members_;
};

}  // namespace tenrank
