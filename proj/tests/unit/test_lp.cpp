#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "multicheb/errors.hpp"
#include "multicheb/lp.hpp"

using namespace multicheb;
using doctest::Approx;

TEST_CASE("two-variable maximization and its multipliers") {
  LinearProgram lp(2);
  lp.objective = {-1, -1};
  lp.add({1, 2}, Relation::LessEqual, 4);
  lp.add({3, 1}, Relation::LessEqual, 6);
  const auto r = solve_lp(lp);
  REQUIRE(r.status == LpStatus::Optimal);
  CHECK(r.primal[0] == Approx(1.6));
  CHECK(r.primal[1] == Approx(1.2));
  CHECK(r.objective_value == Approx(-2.8));
  CHECK(r.dual[0] == Approx(-0.4));
  CHECK(r.dual[1] == Approx(-0.2));
}

TEST_CASE("status detection") {
  SUBCASE("infeasible") {
    LinearProgram lp(1);
    lp.add({1}, Relation::LessEqual, 0);
    lp.add({1}, Relation::GreaterEqual, 1);
    CHECK(solve_lp(lp).status == LpStatus::Infeasible);
    CHECK(solve_lp_exact(to_exact(lp)).status == LpStatus::Infeasible);
  }
  SUBCASE("unbounded") {
    LinearProgram lp(2);
    lp.objective = {1, 0};
    lp.add({0, 1}, Relation::LessEqual, 5);
    CHECK(solve_lp(lp).status == LpStatus::Unbounded);
    CHECK(solve_lp_exact(to_exact(lp)).status == LpStatus::Unbounded);
  }
  SUBCASE("no constraints, zero objective") {
    LinearProgram lp(3);
    const auto r = solve_lp(lp);
    CHECK(r.status == LpStatus::Optimal);
    CHECK(r.objective_value == 0.0);
  }
}

TEST_CASE("equalities and variable bounds") {
  LinearProgram lp(2);
  lp.objective = {1, 1};
  lp.add({1, -1}, Relation::Equal, 0);
  lp.lower[0] = 0.25;
  lp.upper[1] = 3.0;
  const auto r = solve_lp(lp);
  REQUIRE(r.status == LpStatus::Optimal);
  CHECK(r.primal[0] == Approx(0.25));
  CHECK(r.primal[1] == Approx(0.25));
  CHECK(r.lower_dual[0] + r.dual[0] == Approx(1.0));
}

TEST_CASE("Beale's cycling example terminates at -1/20") {
  ExactLinearProgram lp(4);
  lp.objective = {Rational(-3, 4), Rational(150), Rational(-1, 50), Rational(6)};
  lp.add({Rational(1, 4), Rational(-60), Rational(-1, 25), Rational(9)}, Relation::LessEqual, Rational(0));
  lp.add({Rational(1, 2), Rational(-90), Rational(-1, 50), Rational(3)}, Relation::LessEqual, Rational(0));
  lp.add({Rational(0), Rational(0), Rational(1), Rational(0)}, Relation::LessEqual, Rational(1));
  for (auto& l : lp.lower) l = Rational(0);
  const auto r = solve_lp_exact(lp);
  REQUIRE(r.status == LpStatus::Optimal);
  CHECK(r.objective_value == Rational(-1, 20));
  CHECK(r.primal[0] == Rational(1, 25));
  CHECK(r.primal[2] == Rational(1));

  LinearProgram f(4);
  f.objective = {-0.75, 150, -0.02, 6};
  f.add({0.25, -60, -0.04, 9}, Relation::LessEqual, 0);
  f.add({0.5, -90, -0.02, 3}, Relation::LessEqual, 0);
  f.add({0, 0, 1, 0}, Relation::LessEqual, 1);
  for (auto& l : f.lower) l = 0.0;
  const auto rf = solve_lp(f);
  REQUIRE(rf.status == LpStatus::Optimal);
  CHECK(rf.objective_value == Approx(-0.05));
}

TEST_CASE("random LPs: float and exact agree, strong duality holds exactly") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> coef(-5, 5), dims(1, 4), rows(1, 8), rel(0, 2);
  int optimal = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = dims(rng);
    LinearProgram lp(n);
    for (auto& c : lp.objective) c = coef(rng);
    const int k = rows(rng);
    for (int i = 0; i < k; ++i) {
      std::vector<double> a(n);
      for (auto& x : a) x = coef(rng);
      const int r = rel(rng);
      lp.add(a, r == 0 ? Relation::LessEqual : r == 1 ? Relation::GreaterEqual : Relation::Equal, coef(rng));
    }
    for (std::size_t j = 0; j < n; ++j) {
      if (trial % 3 != 0) lp.lower[j] = -10.0;
      if (trial % 5 != 0) lp.upper[j] = 10.0;
    }
    const auto rf = solve_lp(lp);
    const auto ex = to_exact(lp);
    const auto re = solve_lp_exact(ex);
    REQUIRE(rf.status == re.status);
    if (re.status != LpStatus::Optimal) continue;
    ++optimal;
    CHECK(rf.objective_value == Approx(to_double(re.objective_value)).epsilon(1e-9));

    // c = sum dual_k a_k + lower_dual - upper_dual and c.x = dual.b + ...
    Rational value = 0;
    for (std::size_t k2 = 0; k2 < ex.constraints.size(); ++k2) value += re.dual[k2] * ex.constraints[k2].rhs;
    for (std::size_t j = 0; j < n; ++j) {
      Rational cj = re.lower_dual[j] - re.upper_dual[j];
      for (std::size_t k2 = 0; k2 < ex.constraints.size(); ++k2) cj += re.dual[k2] * ex.constraints[k2].coeffs[j];
      CHECK(cj == ex.objective[j]);
      if (ex.lower[j]) value += re.lower_dual[j] * *ex.lower[j];
      else CHECK(sgn(re.lower_dual[j]) == 0);
      if (ex.upper[j]) value -= re.upper_dual[j] * *ex.upper[j];
      else CHECK(sgn(re.upper_dual[j]) == 0);
      CHECK(sgn(re.lower_dual[j]) >= 0);
      CHECK(sgn(re.upper_dual[j]) >= 0);
    }
    CHECK(value == re.objective_value);
    for (std::size_t k2 = 0; k2 < ex.constraints.size(); ++k2) {
      if (ex.constraints[k2].relation == Relation::LessEqual) CHECK(sgn(re.dual[k2]) <= 0);
      if (ex.constraints[k2].relation == Relation::GreaterEqual) CHECK(sgn(re.dual[k2]) >= 0);
    }
  }
  CHECK(optimal > 50);
}

TEST_CASE("validation and pivot cap") {
  LinearProgram bad(2);
  bad.add({1}, Relation::LessEqual, 0);
  CHECK_THROWS_AS(solve_lp(bad), InputError);

  LinearProgram lp(2);
  lp.objective = {-1, -1};
  lp.add({1, 2}, Relation::LessEqual, 4);
  lp.add({3, 1}, Relation::LessEqual, 6);
  LpOptions o;
  o.max_pivots = 1;
  CHECK(solve_lp(lp, o).status == LpStatus::NumericFailure);
}

TEST_CASE("standard form") {
  // min y1 + 2 y2 s.t. y1 + y2 = 1, y >= 0
  Matrix<double> cols(2, 1);
  cols(0, 0) = 1;
  cols(1, 0) = 1;
  const auto r = solve_standard_form(cols, {1.0}, {1.0, 2.0});
  REQUIRE(r.status == LpStatus::Optimal);
  CHECK(r.x[0] == Approx(1.0));
  CHECK(r.x[1] == Approx(0.0));
  CHECK(r.objective_value == Approx(1.0));
}
