#pragma once

#include <compare>
#include <cstddef>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "multicheb/linalg.hpp"
#include "multicheb/rational.hpp"
#include "multicheb/types.hpp"

namespace multicheb {

struct MultiIndex {
  std::vector<int> exponents;

  int degree() const;
  std::size_t n() const { return exponents.size(); }
  friend bool operator==(const MultiIndex&, const MultiIndex&) = default;
};

// Graded order with descending lex inside each degree: 1, x, y, x^2, xy, y^2, ...
bool graded_lex_less(const MultiIndex& a, const MultiIndex& b);

struct Term {
  MultiIndex index;
  double coeff = 1.0;
};

// One spanning function of V: a finite sum of scaled monomials.
using BasisElement = std::vector<Term>;

// Ordered, linearly independent set of polynomials spanning V. Immutable.
class Basis {
 public:
  // Throws InputError on inconsistent variable counts, empty elements, or
  // (when check_independence) numerically dependent elements.
  Basis(std::size_t n, std::vector<BasisElement> elements, std::string label,
        bool check_independence = true);

  std::size_t n() const { return n_; }
  std::size_t size() const { return elements_.size(); }
  const std::string& label() const { return label_; }
  const std::vector<BasisElement>& elements() const { return elements_; }
  int max_degree() const { return max_degree_; }

  // Values of every element at x, written to out (size() entries).
  template <class S>
  void evaluate(std::span<const S> x, std::span<S> out) const;

  std::vector<double> evaluate(std::span<const double> x) const;

  friend bool operator==(const Basis& a, const Basis& b);

 private:
  std::size_t n_;
  std::vector<BasisElement> elements_;
  std::string label_;
  int max_degree_ = 0;
};

using BasisPtr = std::shared_ptr<const Basis>;

// All monomials of total degree <= d in n variables, graded-lex ordered.
BasisPtr enumerate_degree_basis(std::size_t n, int d);

std::size_t binomial(std::size_t n, std::size_t k);

// Numerical independence test: full column rank of the design matrix on
// size()+5 pseudo-random points of [-1,1]^n (fixed seed).
bool is_linearly_independent(const Basis& basis);

class Polynomial {
 public:
  Polynomial(BasisPtr basis, std::vector<double> coeffs);
  static Polynomial zero(BasisPtr basis);

  const Basis& basis() const { return *basis_; }
  const BasisPtr& basis_ptr() const { return basis_; }
  const std::vector<double>& coeffs() const { return coeffs_; }

  // Throws InputError when x.size() != basis().n().
  double operator()(std::span<const double> x) const;

  Polynomial operator+(const Polynomial& o) const;
  Polynomial operator-(const Polynomial& o) const;
  Polynomial operator*(double s) const;

  std::string to_string() const;

 private:
  BasisPtr basis_;
  std::vector<double> coeffs_;
};

inline Polynomial operator*(double s, const Polynomial& p) { return p * s; }

double eval(const Polynomial& p, std::span<const double> x);

// Entry (i, j) = basis element j at point i.
Matrix<double> design_matrix(const Basis& basis, std::span<const Point> points);
Matrix<Rational> design_matrix_exact(const Basis& basis, std::span<const Point> points);

template <class S>
Matrix<S> design_matrix_as(const Basis& basis, std::span<const Point> points) {
  if constexpr (ScalarTraits<S>::exact) {
    return design_matrix_exact(basis, points);
  } else {
    return design_matrix(basis, points);
  }
}

}  // namespace multicheb
