#include "tenrank/shape.hpp"

#include <algorithm>

#include "tenrank/error.hpp"

namespace tenrank {

Shape::Shape(std::vector<int> dims) : dims_(std::move(dims)) {
  if (dims_.empty()) throw Error(ErrorCode::BadSpec, "shape needs at least one factor");
  strides_.assign(dims_.size(), 1);
  Index total = 1;
  for (std::size_t i = dims_.size(); i-- > 0;) {
    if (dims_[i] < 1) throw Error(ErrorCode::BadSpec, "shape dims must be >= 1");
    strides_[i] = total;
    if (total > (Index{1} << 62) / static_cast<Index>(dims_[i])) throw Error(ErrorCode::BadSpec, "shape too large");
    total *= static_cast<Index>(dims_[i]);
  }
  size_ = total;
}

Shape Shape::uniform(int d, int n) {
  if (n < 1) throw Error(ErrorCode::BadSpec, "shape needs at least one factor");
  return Shape(std::vector<int>(static_cast<std::size_t>(n), d));
}

bool Shape::is_uniform() const {
  return std::all_of(dims_.begin(), dims_.end(), [&](int d) { return d == dims_.front(); });
}

Index Shape::linear(std::span<const int> idx) const {
  if (idx.size() != dims_.size())
    throw Error(ErrorCode::IndexOutOfShape, "multi-index has " + std::to_string(idx.size()) + " digits for shape " + str());
  Index lin = 0;
  for (std::size_t i = 0; i < idx.size(); ++i) {
    if (idx[i] < 0 || idx[i] >= dims_[i])
      throw Error(ErrorCode::IndexOutOfShape, "index digit " + std::to_string(idx[i]) + " outside factor " + std::to_string(i) + " of shape " + str());
    lin += static_cast<Index>(idx[i]) * strides_[i];
  }
  return lin;
}

std::vector<int> Shape::multi(Index lin) const {
  std::vector<int> out(dims_.size());
  for (std::size_t i = 0; i < dims_.size(); ++i) out[i] = digit(lin, static_cast<int>(i));
  return out;
}

std::string Shape::str() const {
  std::string out = "(";
  for (std::size_t i = 0; i < dims_.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(dims_[i]);
  }
  return out + ")";
}

Bipartition::Bipartition(int n, std::vector<int> members) : n_(n), members_(std::move(members)) {
  std::sort(members_.begin(), members_.end());
  members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
  if (members_.empty() || static_cast<int>(members_.size()) >= n)
    throw Error(ErrorCode::BadSpec, "bipartition side must be nonempty and proper");
  if (members_.front() < 0 || members_.back() >= n) throw Error(ErrorCode::BadSpec, "bipartition member out of range");
}

std::vector<int> Bipartition::complement() const {
  std::vector<int> out;
  for (int i = 0; i < n_; ++i)
    if (!contains(i)) out.push_back(i);
  return out;
}

bool Bipartition::contains(int i) const { return std::binary_search(members_.begin(), members_.end(), i); }

std::string Bipartition::str() const {
  std::string out = "{";
  for (std::size_t i = 0; i < members_.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(members_[i]);
  }
  return out + "}";
}

std::vector<Bipartition> Bipartition::all(int n) {
  std::vector<Bipartition> out;
  if (n < 2) return out;
  for (unsigned mask = 0; mask < (1u << (n - 1)); ++mask) {
    std::vector<int> members{0};
    for (int i = 1; i < n; ++i)
      if (mask & (1u << (i - 1))) members.push_back(i);
    if (static_cast<int>(members.size()) == n) continue;
    out.emplace_back(n, std::move(members));
  }
  return out;
}

}  // namespace tenrank
