#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "multicheb/errors.hpp"
#include "multicheb/poly.hpp"
#include "support/oracles.hpp"

using namespace multicheb;
using doctest::Approx;

TEST_CASE("degree basis size and order") {
  for (std::size_t n = 1; n <= 3; ++n)
    for (int d = 0; d <= 4; ++d) CHECK(enumerate_degree_basis(n, d)->size() == binomial(n + d, d));
  const auto b = enumerate_degree_basis(2, 2);
  const std::vector<std::vector<int>> want = {{0, 0}, {1, 0}, {0, 1}, {2, 0}, {1, 1}, {0, 2}};
  REQUIRE(b->size() == want.size());
  for (std::size_t j = 0; j < want.size(); ++j) CHECK(b->elements()[j][0].index.exponents == want[j]);
  for (std::size_t j = 1; j < want.size(); ++j)
    CHECK(graded_lex_less(b->elements()[j - 1][0].index, b->elements()[j][0].index));
  CHECK(b->max_degree() == 2);
  CHECK(b->label() == "P_2(R^2)");
}

TEST_CASE("binomial") {
  CHECK(binomial(5, 2) == 10);
  CHECK(binomial(7, 0) == 1);
  CHECK(binomial(3, 4) == 0);
}

TEST_CASE("basis validation") {
  const Term x{MultiIndex{{1}}, 1.0}, two_x{MultiIndex{{1}}, 2.0}, one{MultiIndex{{0}}, 1.0};
  CHECK_THROWS_AS(Basis(1, {{x}, {two_x}}, "dependent"), InputError);
  CHECK_NOTHROW(Basis(1, {{x}, {one}}, "ok"));
  CHECK_THROWS_AS(Basis(1, {{}}, "empty element"), InputError);
  CHECK_THROWS_AS(Basis(2, {{x}}, "wrong n"), InputError);
  CHECK(is_linearly_independent(Basis(1, {{x}, {two_x}}, "unchecked", false)) == false);
  // 1 + x and x - 1 are independent even though they share monomials
  const Basis mixed(1, {{one, x}, {x, Term{MultiIndex{{0}}, -1.0}}}, "mixed");
  CHECK(mixed.size() == 2);
}

TEST_CASE("evaluation matches an independent monomial evaluator") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-1.5, 1.5);
  const auto b = enumerate_degree_basis(3, 3);
  for (int k = 0; k < 50; ++k) {
    Point x = {u(rng), u(rng), u(rng)};
    const auto v = b->evaluate(x);
    for (std::size_t j = 0; j < b->size(); ++j) CHECK(v[j] == Approx(oracle::basis_value(b->elements()[j], x)));
  }
}

TEST_CASE("design matrices, float and exact") {
  const auto b = enumerate_degree_basis(2, 2);
  const std::vector<Point> pts = {{0.5, -0.25}, {1, 1}, {-0.75, 0.125}};
  const auto g = design_matrix(*b, pts);
  const auto ge = design_matrix_exact(*b, pts);
  REQUIRE(g.rows() == 3);
  REQUIRE(g.cols() == 6);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 6; ++j) {
      CHECK(g(i, j) == Approx(oracle::basis_value(b->elements()[j], pts[i])));
      CHECK(ge(i, j) == to_rational(g(i, j)));  // dyadic inputs: exact
    }
  CHECK(ge(0, 4) == Rational(-1, 8));
}

TEST_CASE("polynomial arithmetic and printing") {
  const auto b = enumerate_degree_basis(2, 2);
  const Polynomial p(b, {-2, 0, 0, 3, 0, 3});
  CHECK(p(std::vector<double>{0, 0}) == Approx(-2));
  CHECK(p(std::vector<double>{1, 0}) == Approx(1));
  CHECK(eval(p, std::vector<double>{0.5, 0.5}) == Approx(-0.5));
  const Polynomial q = p * 2.0 - Polynomial::zero(b) + p;
  CHECK(q.coeffs()[3] == Approx(9));
  CHECK((0.5 * p).coeffs()[0] == Approx(-1));
  CHECK_THROWS_AS(p(std::vector<double>{1}), InputError);
  CHECK_THROWS_AS(Polynomial(b, {1, 2}), InputError);
  CHECK_THROWS_AS(p + Polynomial::zero(enumerate_degree_basis(1, 2)), InputError);
  CHECK(!p.to_string().empty());
}
