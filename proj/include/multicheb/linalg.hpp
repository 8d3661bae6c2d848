#pragma once

#include <cassert>
#include <cstddef>
#include <span>
#include <vector>

#include "multicheb/rational.hpp"

namespace multicheb {

// Dense row-major matrix. Deliberately minimal: the heavy lifting (SVD) goes
// through Eigen inside linalg.cpp, exact elimination is done here by hand.
template <class S>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, const S& fill = S(0))
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  S& operator()(std::size_t i, std::size_t j) {
    assert(i < rows_ && j < cols_);
    return data_[i * cols_ + j];
  }
  const S& operator()(std::size_t i, std::size_t j) const {
    assert(i < rows_ && j < cols_);
    return data_[i * cols_ + j];
  }

  std::span<S> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
  std::span<const S> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }

  const std::vector<S>& data() const { return data_; }

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = S(1);
    return m;
  }

  Matrix transposed() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  // Sub-matrix made of the given rows, in order.
  Matrix select_rows(std::span<const std::size_t> idx) const {
    Matrix out(idx.size(), cols_);
    for (std::size_t k = 0; k < idx.size(); ++k) {
      auto src = row(idx[k]);
      std::copy(src.begin(), src.end(), out.row(k).begin());
    }
    return out;
  }

  static Matrix from_rows(const std::vector<std::vector<S>>& rows, std::size_t cols) {
    Matrix m(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      assert(rows[i].size() == cols);
      std::copy(rows[i].begin(), rows[i].end(), m.row(i).begin());
    }
    return m;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<S> data_;
};

inline constexpr double kRankCutoff = 1e-9;

// Rank with singular values below rel_cutoff * sigma_max treated as zero.
int numeric_rank(const Matrix<double>& a, double rel_cutoff = kRankCutoff);
int exact_rank(const Matrix<Rational>& a);

// Orthonormal basis of {v : a v = 0}, from the right singular vectors.
std::vector<std::vector<double>> null_space(const Matrix<double>& a,
                                            double rel_cutoff = kRankCutoff);
// Basis of the exact kernel, one vector per free column of the RREF.
std::vector<std::vector<Rational>> null_space(const Matrix<Rational>& a);

inline int rank_of(const Matrix<double>& a) { return numeric_rank(a); }
inline int rank_of(const Matrix<Rational>& a) { return exact_rank(a); }

Matrix<Rational> to_rational(const Matrix<double>& a);
Matrix<double> to_double(const Matrix<Rational>& a);

template <class S>
S dot(std::span<const S> a, std::span<const S> b) {
  assert(a.size() == b.size());
  S acc(0);
  for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
  return acc;
}

}  // namespace multicheb
