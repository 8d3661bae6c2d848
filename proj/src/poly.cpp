#include "multicheb/poly.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>
#include <random>
#include <sstream>

#include "multicheb/errors.hpp"
#include "multicheb/kernels.hpp"

namespace multicheb {

int MultiIndex::degree() const { return std::accumulate(exponents.begin(), exponents.end(), 0); }

bool graded_lex_less(const MultiIndex& a, const MultiIndex& b) {
  const int da = a.degree(), db = b.degree();
  if (da != db) return da < db;
  return a.exponents > b.exponents;
}

Basis::Basis(std::size_t n, std::vector<BasisElement> elements, std::string label,
             bool check_independence)
    : n_(n), elements_(std::move(elements)), label_(std::move(label)) {
  if (n_ == 0) throw InputError("basis needs at least one variable");
  if (elements_.empty()) throw InputError("basis needs at least one element");
  for (std::size_t j = 0; j < elements_.size(); ++j) {
    if (elements_[j].empty()) throw InputError("basis element " + std::to_string(j) + " is empty");
    for (const auto& t : elements_[j]) {
      if (t.index.n() != n_)
        throw InputError("basis element " + std::to_string(j) + " has a term in " +
                         std::to_string(t.index.n()) + " variables, expected " +
                         std::to_string(n_));
      for (int e : t.index.exponents)
        if (e < 0) throw InputError("negative exponent in basis element " + std::to_string(j));
      if (!std::isfinite(t.coeff)) throw InputError("non-finite basis coefficient");
      max_degree_ = std::max(max_degree_, t.index.degree());
    }
  }
  if (check_independence && !is_linearly_independent(*this))
    throw InputError("basis elements are linearly dependent");
}

template <class S>
void Basis::evaluate(std::span<const S> x, std::span<S> out) const {
  if (x.size() != n_)
    throw InputError("point has dimension " + std::to_string(x.size()) + ", basis expects " +
                     std::to_string(n_));
  // powers[i * (D+1) + k] = x_i^k
  const std::size_t stride = static_cast<std::size_t>(max_degree_) + 1;
  std::vector<S> powers(n_ * stride);
  for (std::size_t i = 0; i < n_; ++i) {
    powers[i * stride] = S(1);
    for (std::size_t k = 1; k < stride; ++k) powers[i * stride + k] = powers[i * stride + k - 1] * x[i];
  }
  for (std::size_t j = 0; j < elements_.size(); ++j) {
    S acc(0);
    for (const auto& t : elements_[j]) {
      S term = ScalarTraits<S>::from_double(t.coeff);
      for (std::size_t i = 0; i < n_; ++i) {
        const int e = t.index.exponents[i];
        if (e > 0) term *= powers[i * stride + static_cast<std::size_t>(e)];
      }
      acc += term;
    }
    out[j] = acc;
  }
}

template void Basis::evaluate<double>(std::span<const double>, std::span<double>) const;
template void Basis::evaluate<Rational>(std::span<const Rational>, std::span<Rational>) const;

std::vector<double> Basis::evaluate(std::span<const double> x) const {
  std::vector<double> out(size());
  evaluate<double>(x, out);
  return out;
}

bool operator==(const Basis& a, const Basis& b) {
  if (a.n_ != b.n_ || a.elements_.size() != b.elements_.size()) return false;
  for (std::size_t j = 0; j < a.elements_.size(); ++j) {
    const auto& ea = a.elements_[j];
    const auto& eb = b.elements_[j];
    if (ea.size() != eb.size()) return false;
    for (std::size_t t = 0; t < ea.size(); ++t)
      if (!(ea[t].index == eb[t].index) || ea[t].coeff != eb[t].coeff) return false;
  }
  return true;
}

std::size_t binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  std::size_t r = 1;
  for (std::size_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

namespace {

void enumerate_degree(std::size_t n, int degree, std::size_t pos, std::vector<int>& cur,
                      std::vector<MultiIndex>& out) {
  if (pos + 1 == n) {
    cur[pos] = degree;
    out.push_back({cur});
    return;
  }
  for (int e = degree; e >= 0; --e) {
    cur[pos] = e;
    enumerate_degree(n, degree - e, pos + 1, cur, out);
  }
}

}  // namespace

BasisPtr enumerate_degree_basis(std::size_t n, int d) {
  if (n == 0) throw InputError("basis needs at least one variable");
  if (d < 0) throw InputError("degree must be nonnegative");
  std::vector<BasisElement> elements;
  std::vector<int> cur(n, 0);
  for (int k = 0; k <= d; ++k) {
    std::vector<MultiIndex> level;
    enumerate_degree(n, k, 0, cur, level);
    for (auto& m : level) elements.push_back({Term{std::move(m), 1.0}});
  }
  std::string label = "P_" + std::to_string(d) + "(R^" + std::to_string(n) + ")";
  // Distinct monomials are independent; skip the numerical check.
  return std::make_shared<const Basis>(n, std::move(elements), std::move(label), false);
}

bool is_linearly_independent(const Basis& basis) {
  std::mt19937_64 rng(0x5eed1234ULL);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<Point> pts(basis.size() + 5, Point(basis.n()));
  for (auto& p : pts)
    for (auto& c : p) c = u(rng);
  const auto g = kernels::design_matrix(basis, pts, Exec::Serial);
  return numeric_rank(g) == static_cast<int>(basis.size());
}

Polynomial::Polynomial(BasisPtr basis, std::vector<double> coeffs)
    : basis_(std::move(basis)), coeffs_(std::move(coeffs)) {
  if (!basis_) throw InputError("polynomial without a basis");
  if (coeffs_.size() != basis_->size())
    throw InputError("polynomial has " + std::to_string(coeffs_.size()) +
                     " coefficients, basis has " + std::to_string(basis_->size()) + " elements");
}

Polynomial Polynomial::zero(BasisPtr basis) {
  const std::size_t m = basis->size();
  return Polynomial(std::move(basis), std::vector<double>(m, 0.0));
}

double Polynomial::operator()(std::span<const double> x) const {
  const std::vector<double> g = basis_->evaluate(x);
  double acc = 0.0;
  for (std::size_t j = 0; j < g.size(); ++j) acc += coeffs_[j] * g[j];
  return acc;
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
  if (!(*basis_ == *o.basis_)) throw InputError("adding polynomials over different bases");
  std::vector<double> c = coeffs_;
  for (std::size_t j = 0; j < c.size(); ++j) c[j] += o.coeffs_[j];
  return Polynomial(basis_, std::move(c));
}

Polynomial Polynomial::operator-(const Polynomial& o) const { return *this + o * -1.0; }

Polynomial Polynomial::operator*(double s) const {
  std::vector<double> c = coeffs_;
  for (auto& v : c) v *= s;
  return Polynomial(basis_, std::move(c));
}

std::string Polynomial::to_string() const {
  std::ostringstream os;
  bool first = true;
  for (std::size_t j = 0; j < coeffs_.size(); ++j) {
    if (coeffs_[j] == 0.0) continue;
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, coeffs_[j]);
    if (!first) os << " + ";
    os << std::string_view(buf, res.ptr - buf) << "*g" << j;
    first = false;
  }
  if (first) os << "0";
  return os.str();
}

double eval(const Polynomial& p, std::span<const double> x) { return p(x); }

Matrix<double> design_matrix(const Basis& basis, std::span<const Point> points) {
  return kernels::design_matrix(basis, points, Exec::Parallel);
}

Matrix<Rational> design_matrix_exact(const Basis& basis, std::span<const Point> points) {
  Matrix<Rational> g(points.size(), basis.size());
  std::vector<Rational> x;
  std::vector<Rational> row(basis.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    x.resize(points[i].size());
    for (std::size_t k = 0; k < x.size(); ++k) x[k] = to_rational(points[i][k]);
    basis.evaluate<Rational>(x, row);
    std::copy(row.begin(), row.end(), g.row(i).begin());
  }
  return g;
}

}  // namespace multicheb
