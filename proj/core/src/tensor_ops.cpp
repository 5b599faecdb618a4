#include "tenrank/tensor_ops.hpp"

#include <algorithm>
#include <map>

namespace tenrank {

CycMatrix flatten(const CycTensor& t, const std::vector<int>& row_factors, bool compress) {
  const Shape& shape = t.shape();
  std::vector<bool> is_row(static_cast<std::size_t>(shape.arity()), false);
  for (int f : row_factors) {
    if (f < 0 || f >= shape.arity()) throw Error(ErrorCode::BadSpec, "flattening factor out of range");
    is_row[static_cast<std::size_t>(f)] = true;
  }
  Index rows = 1;
  Index cols = 1;
  for (int i = 0; i < shape.arity(); ++i) (is_row[static_cast<std::size_t>(i)] ? rows : cols) *= static_cast<Index>(shape.dim(i));
  std::vector<std::pair<Index, Index>> coords;
  coords.reserve(t.nnz());
  for (const auto& [k, v] : t.entries()) {
    Index r = 0;
    Index c = 0;
    for (int i = 0; i < shape.arity(); ++i) {
      auto d = static_cast<Index>(shape.dim(i));
      if (is_row[static_cast<std::size_t>(i)]) r = r * d + static_cast<Index>(shape.digit(k, i));
      else c = c * d + static_cast<Index>(shape.digit(k, i));
    }
    coords.emplace_back(r, c);
  }
  std::map<Index, int> row_pos;
  std::map<Index, int> col_pos;
  if (compress) {
    for (const auto& [r, c] : coords) {
      row_pos.emplace(r, 0);
      col_pos.emplace(c, 0);
    }
    int p = 0;
    for (auto& [k, pos] : row_pos) pos = p++;
    p = 0;
    for (auto& [k, pos] : col_pos) pos = p++;
  } else if (rows * cols > (Index{1} << 28)) {
    throw Error(ErrorCode::BadSpec, "uncompressed flattening too large");
  }
  CycMatrix m(compress ? static_cast<int>(row_pos.size()) : static_cast<int>(rows), compress ? static_cast<int>(col_pos.size()) : static_cast<int>(cols));
  for (std::size_t e = 0; e < coords.size(); ++e) {
    auto [r, c] = coords[e];
    int rr = compress ? row_pos[r] : static_cast<int>(r);
    int cc = compress ? col_pos[c] : static_cast<int>(c);
    m(rr, cc) = t.entries()[e].second;
  }
  return m;
}

int schmidt_rank(const CycTensor& t, const Bipartition& s) {
  if (s.arity() != t.arity()) throw Error(ErrorCode::ArityMismatch, "bipartition arity does not match tensor");
  if (t.is_zero()) throw Error(ErrorCode::ZeroTensor, "Schmidt rank of the zero tensor");
  return rank(flatten(t, s.members()));
}

int mode_rank(const CycTensor& t, int i) {
  if (t.is_zero()) return 0;
  return rank(flatten(t, {i}));
}

bool MultilinearProfile::is_concise() const {
  return std::all_of(concise.begin(), concise.end(), [](bool b) { return b; });
}

MultilinearProfile multilinear_profile(const CycTensor& t) {
  MultilinearProfile p;
  for (int i = 0; i < t.arity(); ++i) {
    int r = mode_rank(t, i);
    p.ranks.push_back(r);
    p.concise.push_back(r == t.shape().dim(i));
  }
  return p;
}

ConciseCore concise_core(const CycTensor& t) {
  if (t.is_zero()) throw Error(ErrorCode::ZeroTensor, "concise core of the zero tensor");
  ConciseCore out;
  for (int i = 0; i < t.arity(); ++i) {
    const int d = t.shape().dim(i);
    // R = E F with F the mode flattening, so F = E^{-1} R. The compressed
    // flattening drops zero rows; put them back so E acts on all of C^d.
    CycMatrix f = flatten(t, {i}, true);
    CycMatrix full(d, f.cols());
    {
      std::vector<int> present;
      for (const auto& [k, v] : t.entries()) present.push_back(t.shape().digit(k, i));
      std::sort(present.begin(), present.end());
      present.erase(std::unique(present.begin(), present.end()), present.end());
      for (std::size_t r = 0; r < present.size(); ++r)
        for (int c = 0; c < f.cols(); ++c) full(present[r], c) = f(static_cast<int>(r), c);
    }
    RowReduction rr = row_reduce(full);
    const int r = rr.rank();
    CycMatrix proj(r, d);
    for (int a = 0; a < r; ++a)
      for (int b = 0; b < d; ++b) proj(a, b) = rr.transform(a, b);
    CycMatrix e_inv = inverse(rr.transform);
    CycMatrix emb(d, r);
    for (int a = 0; a < d; ++a)
      for (int b = 0; b < r; ++b) emb(a, b) = e_inv(a, b);
    out.project.push_back(std::move(proj));
    out.embed.push_back(std::move(emb));
  }
  out.core = slocc_apply(t, out.project);
  return out;
}

}  // namespace tenrank
