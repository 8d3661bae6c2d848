#include "multicheb/linalg.hpp"

#include <algorithm>

#include <Eigen/SVD>

namespace multicheb {

namespace {

Eigen::MatrixXd to_eigen(const Matrix<double>& a) {
  Eigen::MatrixXd m(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) m(i, j) = a(i, j);
  return m;
}

struct Svd {
  Eigen::VectorXd sigma;
  Eigen::MatrixXd v;
  int rank = 0;
};

Svd svd_of(const Matrix<double>& a, double rel_cutoff, bool want_v) {
  Svd out;
  if (a.rows() == 0 || a.cols() == 0) {
    out.v = Eigen::MatrixXd::Identity(a.cols(), a.cols());
    return out;
  }
  Eigen::BDCSVD<Eigen::MatrixXd> svd(to_eigen(a), want_v ? Eigen::ComputeFullV : 0);
  out.sigma = svd.singularValues();
  const double top = out.sigma.size() > 0 ? out.sigma(0) : 0.0;
  if (top > 0.0) {
    for (Eigen::Index k = 0; k < out.sigma.size(); ++k)
      if (out.sigma(k) > rel_cutoff * top) ++out.rank;
  }
  if (want_v) out.v = svd.matrixV();
  return out;
}

// Reduced row echelon form in place; returns pivot columns.
std::vector<std::size_t> rref(Matrix<Rational>& m) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t p = r;
    while (p < m.rows() && sgn(m(p, c)) == 0) ++p;
    if (p == m.rows()) continue;
    if (p != r)
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(r, j));
    const Rational inv = 1 / m(r, c);
    for (std::size_t j = c; j < m.cols(); ++j) m(r, j) *= inv;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r || sgn(m(i, c)) == 0) continue;
      const Rational f = m(i, c);
      for (std::size_t j = c; j < m.cols(); ++j) m(i, j) -= f * m(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

}  // namespace

int numeric_rank(const Matrix<double>& a, double rel_cutoff) {
  return svd_of(a, rel_cutoff, false).rank;
}

int exact_rank(const Matrix<Rational>& a) {
  Matrix<Rational> m = a;
  return static_cast<int>(rref(m).size());
}

std::vector<std::vector<double>> null_space(const Matrix<double>& a, double rel_cutoff) {
  const Svd s = svd_of(a, rel_cutoff, true);
  std::vector<std::vector<double>> basis;
  for (Eigen::Index k = s.rank; k < static_cast<Eigen::Index>(a.cols()); ++k) {
    std::vector<double> v(a.cols());
    for (std::size_t j = 0; j < a.cols(); ++j) v[j] = s.v(j, k);
    basis.push_back(std::move(v));
  }
  return basis;
}

std::vector<std::vector<Rational>> null_space(const Matrix<Rational>& a) {
  Matrix<Rational> m = a;
  const auto pivots = rref(m);
  std::vector<bool> is_pivot(a.cols(), false);
  for (auto c : pivots) is_pivot[c] = true;

  std::vector<std::vector<Rational>> basis;
  for (std::size_t free = 0; free < a.cols(); ++free) {
    if (is_pivot[free]) continue;
    std::vector<Rational> v(a.cols(), Rational(0));
    v[free] = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -m(r, free);
    basis.push_back(std::move(v));
  }
  return basis;
}

Matrix<Rational> to_rational(const Matrix<double>& a) {
  Matrix<Rational> out(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = to_rational(a(i, j));
  return out;
}

Matrix<double> to_double(const Matrix<Rational>& a) {
  Matrix<double> out(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = a(i, j).get_d();
  return out;
}

}  // namespace multicheb
