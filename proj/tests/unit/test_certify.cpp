#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "multicheb/certify.hpp"
#include "multicheb/errors.hpp"
#include "support/oracles.hpp"

using namespace multicheb;
using doctest::Approx;

TEST_CASE("strict separation on the line") {
  const auto p1 = enumerate_degree_basis(1, 1), p2 = enumerate_degree_basis(1, 2);
  for (auto a : {Arithmetic::Float, Arithmetic::Exact}) {
    const auto s = strict_separator({{0}}, {{1}}, p1, a);
    REQUIRE(s.separator);
    CHECK((*s.separator)(std::vector<double>{0}) <= -1 + 1e-9);
    CHECK((*s.separator)(std::vector<double>{1}) >= 1 - 1e-9);
    // {-1, 1} against {0}: no line, but a parabola
    CHECK_FALSE(strict_separator({{-1}, {1}}, {{0}}, p1, a).separator);
    CHECK(strict_separator({{-1}, {1}}, {{0}}, p2, a).separator);
  }
  CHECK_THROWS_AS(strict_separator({}, {{1}}, p1), InputError);
  CHECK_THROWS_AS(strict_separator({{0}}, {{0}}, p1), InputError);
  CHECK_THROWS_AS(strict_separator({{0, 0}}, {{1, 0}}, p1), InputError);
}

TEST_CASE("separator near the box bound warns") {
  // points 1/512 apart need slope 1024: just inside a bound of 1024, outside 1000
  const auto p1 = enumerate_degree_basis(1, 1);
  CHECK_FALSE(strict_separator({{0}}, {{1.0 / 512}}, p1, Arithmetic::Float, 1000).separator);
  const auto w = strict_separator({{0}}, {{1.0 / 512}}, p1, Arithmetic::Float, 1024);
  REQUIRE(w.separator);
  CHECK(w.warnings.size() == 1);
}

TEST_CASE("is_optimal: verdicts and witnesses") {
  const Instance inst(box_grid({-1}, {1}, 3), {1, 0, 1}, enumerate_degree_basis(1, 1));
  const auto b = inst.basis_ptr();
  const Certificate ok = is_optimal(inst, Polynomial(b, {0.5, 0}));
  CHECK(ok.verdict == Verdict::OptimalCertified);
  CHECK_FALSE(ok.witness);
  CHECK(ok.t == Approx(0.5));
  CHECK(to_string(ok.verdict) == "optimal");

  const Certificate bad = is_optimal(inst, Polynomial(b, {0.5, 0.25}));
  CHECK(bad.verdict == Verdict::SuboptimalWitness);
  REQUIRE(bad.witness);
  CHECK(bad.improved_t < bad.t);
  CHECK(bad.margin >= 1 - 1e-9);
  CHECK(to_string(bad.verdict) == "suboptimal");

  // deviation attained with one sign only
  const Certificate low = is_optimal(inst, Polynomial(b, {0, 0}));
  CHECK(low.verdict == Verdict::SuboptimalWitness);
  CHECK(low.neg_set.empty());

  // interpolating candidate: N and P share every point
  const Instance fit(box_grid({-1}, {1}, 3), {1, 2, 3}, enumerate_degree_basis(1, 1));
  CHECK(is_optimal(fit, Polynomial(fit.basis_ptr(), {2, 1})).verdict == Verdict::OptimalCertified);
  CHECK_THROWS_AS(is_optimal(inst, Polynomial(enumerate_degree_basis(1, 2), {0, 0, 0})), InputError);
}

TEST_CASE("separating cone dimension") {
  const auto p1 = enumerate_degree_basis(1, 1);
  CHECK(separating_cone_dimension({{0}}, {{1}}, *p1).dim_s == 2);
  // a + b x >= 0 at 0 and <= 0 at +-1 forces a <= -|b| <= 0 <= a
  CHECK(separating_cone_dimension({{0}}, {{1}, {-1}}, *p1).dim_s == 0);
  CHECK(separating_cone_dimension({{0}}, {{1}, {-1}}, *enumerate_degree_basis(1, 0)).dim_s == 0);
  // a point in both sets forces s to vanish there
  const auto both = separating_cone_dimension({{0}, {1}}, {{0}}, *p1);
  CHECK(both.dim_s == 1);
  for (auto a : {Arithmetic::Float, Arithmetic::Exact})
    CHECK(separating_cone_dimension({{-1}, {1}}, {{0}}, *enumerate_degree_basis(1, 2), a).dim_s == 3);
}

TEST_CASE("dim Q = dim S reports") {
  const Instance fit(box_grid({-1}, {1}, 3), {1, 2, 3}, enumerate_degree_basis(1, 1));
  const auto r = solution_vs_cone_dimension(fit);
  CHECK(r.dim_q == 0);
  CHECK(r.dim_s == 0);
  const Instance sq(box_grid({-1}, {1}, 3), {1, 0, 1}, enumerate_degree_basis(1, 1));
  const auto r2 = solution_vs_cone_dimension(sq);
  CHECK(r2.dim_q == 0);
  CHECK(r2.dim_s == 0);
  const auto sd = solution_set_dimension(sq);
  CHECK(sd.dim_q == 0);
  CHECK_FALSE(sd.unbounded);
}

TEST_CASE("random instances: certificates for solver output and perturbations") {
  std::mt19937_64 rng(17);
  std::normal_distribution<double> noise(0, 1);
  for (int k = 0; k < 40; ++k) {
    const Instance inst = oracle::random_lattice_instance(rng, 1 + k % 2, k % 4, 5 + k % 10);
    const Solution s = solve_minimax(inst);
    CHECK(is_optimal(inst, s.q).verdict == Verdict::OptimalCertified);
    std::vector<double> c = s.q.coeffs();
    for (auto& x : c) x += 0.2 * noise(rng);
    if (oracle::max_deviation(inst, c) <= s.t_star + 1e-6) continue;
    const Certificate cert = is_optimal(inst, Polynomial(inst.basis_ptr(), c));
    REQUIRE(cert.verdict == Verdict::SuboptimalWitness);
    std::vector<double> moved = c;
    for (std::size_t j = 0; j < c.size(); ++j) moved[j] += cert.step * cert.witness->coeffs()[j];
    CHECK(oracle::max_deviation(inst, moved) < oracle::max_deviation(inst, c));
  }
}

TEST_CASE("direction helpers") {
  CHECK(normalize_direction({0, -2, 1}) == std::vector<double>{0, 1, -0.5});
  CHECK(normalize_direction({3, -3}) == std::vector<double>{1, -1});
  CHECK(angle_to_line({1, 1}, {-2, -2}) == Approx(0.0));
  CHECK(angle_to_line({1, 0}, {0, 1}) == Approx(std::acos(0.0)));
  CHECK(angle_to_line({1, 1}, {1, 0}) == Approx(std::atan(1.0)));
  const Domain d = box_grid({0}, {1}, 3);
  CHECK(select_points(d, {0, 2}) == std::vector<Point>{{0}, {1}});
}
