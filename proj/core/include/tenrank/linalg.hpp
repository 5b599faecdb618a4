#pragma once

#include <vector>

#include "tenrank/eps_laurent.hpp"
#include "tenrank/error.hpp"

namespace tenrank {

/// Dense row-major matrix.
template <class S>
class Matrix {
 public:
  Matrix() = default;
  Matrix(int rows, int cols) : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols)) {}
  Matrix(int rows, int cols, std::vector<S> data) : rows_(rows), cols_(cols), data_(std::move(data)) {
    if (data_.size() != static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols))
      throw Error(ErrorCode::DimMismatch, "matrix data size does not match its dimensions");
  }

  static Matrix identity(int n) {
    Matrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = S(1);
    return m;
  }
  static Matrix diagonal(const std::vector<S>& diag) {
    Matrix m(static_cast<int>(diag.size()), static_cast<int>(diag.size()));
    for (std::size_t i = 0; i < diag.size(); ++i) m(static_cast<int>(i), static_cast<int>(i)) = diag[i];
    return m;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  S& operator()(int r, int c) { return data_[static_cast<std::size_t>(r) * static_cast<std::size_t>(cols_) + static_cast<std::size_t>(c)]; }
  const S& operator()(int r, int c) const { return data_[static_cast<std::size_t>(r) * static_cast<std::size_t>(cols_) + static_cast<std::size_t>(c)]; }

  std::vector<S> column(int c) const {
    std::vector<S> out(static_cast<std::size_t>(rows_));
    for (int r = 0; r < rows_; ++r) out[static_cast<std::size_t>(r)] = (*this)(r, c);
    return out;
  }
  std::vector<S> apply(const std::vector<S>& v) const {
    if (static_cast<int>(v.size()) != cols_) throw Error(ErrorCode::DimMismatch, "vector length does not match matrix columns");
    std::vector<S> out(static_cast<std::size_t>(rows_));
    for (int r = 0; r < rows_; ++r)
      for (int c = 0; c < cols_; ++c)
        if (!is_zero(v[static_cast<std::size_t>(c)]) && !is_zero((*this)(r, c))) out[static_cast<std::size_t>(r)] += (*this)(r, c) * v[static_cast<std::size_t>(c)];
    return out;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw Error(ErrorCode::DimMismatch, "matrix product dimension mismatch");
    Matrix out(a.rows_, b.cols_);
    for (int i = 0; i < a.rows_; ++i)
      for (int k = 0; k < a.cols_; ++k) {
        if (is_zero(a(i, k))) continue;
        for (int j = 0; j < b.cols_; ++j)
          if (!is_zero(b(k, j))) out(i, j) += a(i, k) * b(k, j);
      }
    return out;
  }
  friend bool operator==(const Matrix& a, const Matrix& b) { return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_; }

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<S> data_;
};

using CycMatrix = Matrix<Cyclotomic>;
using EpsMatrix = Matrix<EpsLaurent>;

inline EpsMatrix to_eps(const CycMatrix& m) {
  EpsMatrix out(m.rows(), m.cols());
  for (int r = 0; r < m.rows(); ++r)
    for (int c = 0; c < m.cols(); ++c) out(r, c) = EpsLaurent(m(r, c));
  return out;
}

/// Reduced row echelon form R = E * A with E invertible.
struct RowReduction {
  CycMatrix reduced;
  CycMatrix transform;
  std::vector<int> pivots;  // pivot column of each nonzero row of `reduced`
  int rank() const { return static_cast<int>(pivots.size()); }
};

RowReduction row_reduce(const CycMatrix& a);
int rank(const CycMatrix& a);
/// Rank of the matrix whose rows are the given vectors.
int rank_of_vectors(const std::vector<std::vector<Cyclotomic>>& rows);
Cyclotomic determinant(const CycMatrix& a);
/// Throws DivisionByZero on a singular matrix.
CycMatrix inverse(const CycMatrix& a);
/// Basis of {x : A x = 0}.
std::vector<std::vector<Cyclotomic>> kernel(const CycMatrix& a);

}  // namespace tenrank
