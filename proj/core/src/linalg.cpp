#include "tenrank/linalg.hpp"

#include <algorithm>

namespace tenrank {
namespace {

using Rows = std::vector<std::vector<Cyclotomic>>;

// In-place Gauss-Jordan elimination with a unit pivot per row. When `track`
// is given, the same row operations are applied to it.
std::vector<int> eliminate(Rows& rows, std::size_t cols, Rows* track) {
  std::vector<int> pivots;
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows.size(); ++c) {
    std::size_t p = rank;
    while (p < rows.size() && rows[p][c].is_zero()) ++p;
    if (p == rows.size()) continue;
    std::swap(rows[p], rows[rank]);
    if (track) std::swap((*track)[p], (*track)[rank]);
    Cyclotomic inv = rows[rank][c].inverse();
    if (!inv.is_one()) {
      for (std::size_t cc = c; cc < cols; ++cc)
        if (!rows[rank][cc].is_zero()) rows[rank][cc] *= inv;
      if (track)
        for (auto& x : (*track)[rank])
          if (!x.is_zero()) x *= inv;
    }
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r == rank || rows[r][c].is_zero()) continue;
      Cyclotomic factor = rows[r][c];
      for (std::size_t cc = c; cc < cols; ++cc)
        if (!rows[rank][cc].is_zero()) rows[r][cc] -= factor * rows[rank][cc];
      if (track)
        for (std::size_t cc = 0; cc < (*track)[r].size(); ++cc)
          if (!(*track)[rank][cc].is_zero()) (*track)[r][cc] -= factor * (*track)[rank][cc];
    }
    pivots.push_back(static_cast<int>(c));
    ++rank;
  }
  return pivots;
}

Rows to_rows(const CycMatrix& a) {
  Rows rows(static_cast<std::size_t>(a.rows()), std::vector<Cyclotomic>(static_cast<std::size_t>(a.cols())));
  for (int r = 0; r < a.rows(); ++r)
    for (int c = 0; c < a.cols(); ++c) rows[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] = a(r, c);
  return rows;
}

CycMatrix from_rows(const Rows& rows, int cols) {
  CycMatrix m(static_cast<int>(rows.size()), cols);
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (int c = 0; c < cols; ++c) m(static_cast<int>(r), c) = rows[r][static_cast<std::size_t>(c)];
  return m;
}

}  // namespace

RowReduction row_reduce(const CycMatrix& a) {
  Rows rows = to_rows(a);
  Rows track = to_rows(CycMatrix::identity(a.rows()));
  std::vector<int> pivots = eliminate(rows, static_cast<std::size_t>(a.cols()), &track);
  return {from_rows(rows, a.cols()), from_rows(track, a.rows()), std::move(pivots)};
}

int rank(const CycMatrix& a) {
  // Eliminate along the longer side's rows to keep the working set small.
  if (a.rows() > a.cols()) {
    Rows rows(static_cast<std::size_t>(a.cols()), std::vector<Cyclotomic>(static_cast<std::size_t>(a.rows())));
    for (int r = 0; r < a.rows(); ++r)
      for (int c = 0; c < a.cols(); ++c) rows[static_cast<std::size_t>(c)][static_cast<std::size_t>(r)] = a(r, c);
    return static_cast<int>(eliminate(rows, static_cast<std::size_t>(a.rows()), nullptr).size());
  }
  Rows rows = to_rows(a);
  return static_cast<int>(eliminate(rows, static_cast<std::size_t>(a.cols()), nullptr).size());
}

int rank_of_vectors(const std::vector<std::vector<Cyclotomic>>& rows) {
  if (rows.empty()) return 0;
  Rows copy = rows;
  return static_cast<int>(eliminate(copy, copy.front().size(), nullptr).size());
}

Cyclotomic determinant(const CycMatrix& a) {
  if (a.rows() != a.cols()) throw Error(ErrorCode::DimMismatch, "determinant of a non-square matrix");
  Rows rows = to_rows(a);
  const auto n = rows.size();
  Cyclotomic det(1);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && rows[p][c].is_zero()) ++p;
    if (p == n) return Cyclotomic();
    if (p != c) {
      std::swap(rows[p], rows[c]);
      det = -det;
    }
    det *= rows[c][c];
    Cyclotomic inv = rows[c][c].inverse();
    for (std::size_t r = c + 1; r < n; ++r) {
      if (rows[r][c].is_zero()) continue;
      Cyclotomic factor = rows[r][c] * inv;
      for (std::size_t cc = c; cc < n; ++cc)
        if (!rows[c][cc].is_zero()) rows[r][cc] -= factor * rows[c][cc];
    }
  }
  return det;
}

CycMatrix inverse(const CycMatrix& a) {
  if (a.rows() != a.cols()) throw Error(ErrorCode::DimMismatch, "inverse of a non-square matrix");
  RowReduction rr = row_reduce(a);
  if (rr.rank() != a.rows()) throw Error(ErrorCode::DivisionByZero, "matrix is singular");
  return rr.transform;
}

std::vector<std::vector<Cyclotomic>> kernel(const CycMatrix& a) {
  RowReduction rr = row_reduce(a);
  std::vector<bool> is_pivot(static_cast<std::size_t>(a.cols()), false);
  for (int p : rr.pivots) is_pivot[static_cast<std::size_t>(p)] = true;
  std::vector<std::vector<Cyclotomic>> out;
  for (int free = 0; free < a.cols(); ++free) {
    if (is_pivot[static_cast<std::size_t>(free)]) continue;
    std::vector<Cyclotomic> v(static_cast<std::size_t>(a.cols()));
    v[static_cast<std::size_t>(free)] = Cyclotomic(1);
    for (std::size_t r = 0; r < rr.pivots.size(); ++r) v[static_cast<std::size_t>(rr.pivots[r])] = -rr.reduced(static_cast<int>(r), free);
    out.push_back(std::move(v));
  }
  return out;
}

}  // namespace tenrank
