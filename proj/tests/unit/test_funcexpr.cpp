#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "multicheb/funcexpr.hpp"

using namespace multicheb;
using doctest::Approx;

namespace {

double ev(const char* text, std::vector<double> x = {0.5, -2, 3}) { return eval_expr(parse_expr(text), x); }

std::size_t error_offset(const char* text) {
  try {
    parse_expr(text);
  } catch (const ParseError& e) {
    return e.offset();
  }
  return std::string::npos;
}

}  // namespace

TEST_CASE("precedence and associativity") {
  CHECK(ev("1 + 2 * 3") == 7);
  CHECK(ev("(1 + 2) * 3") == 9);
  CHECK(ev("2 ^ 3 ^ 2") == 512);
  CHECK(ev("-2 ^ 2") == -4);
  CHECK(ev("2 ^ -1") == 0.5);
  CHECK(ev("8 / 4 / 2") == 1);
  CHECK(ev("1 - 2 - 3") == -4);
  CHECK(ev("--3") == 3);
  CHECK(ev("1e-3 * 1000") == Approx(1));
  CHECK(ev(".5 + 2.") == 2.5);
}

TEST_CASE("variables, aliases and functions") {
  CHECK(ev("x") == 0.5);
  CHECK(ev("x1 + y + z") == Approx(1.5));
  CHECK(ev("x2 * x3") == -6);
  CHECK(ev("abs(y)") == 2);
  CHECK(ev("sqrt(4)") == 2);
  CHECK(ev("min(x, y, z)") == -2);
  CHECK(ev("max(x, y)") == 0.5);
  CHECK(ev("norm(3, 4)") == 5);
  CHECK(ev("norm(y)") == 2);
  CHECK(ev("(x^2-1/2)*(1-y^2)") == Approx(0.75));
  CHECK(variables_needed(parse_expr("x + x3")) == 3);
  CHECK(variables_needed(parse_expr("1")) == 0);
}

TEST_CASE("parse errors carry offsets") {
  CHECK(error_offset("1 +") == 3);
  CHECK(error_offset("(1") == 2);
  CHECK(error_offset("1 $ 2") == 2);
  CHECK(error_offset("foo(1)") == 0);
  CHECK(error_offset("x0") == 0);
  CHECK(error_offset("abs(1, 2)") != std::string::npos);
  CHECK(error_offset("min(1)") != std::string::npos);
  CHECK(error_offset("") == 0);
  CHECK(error_offset("1 2") == 2);
  CHECK_THROWS_AS(parse_expr("sqrt()"), ParseError);
}

TEST_CASE("evaluation errors") {
  CHECK_THROWS_AS(ev("1 / 0"), EvalError);
  CHECK_THROWS_AS(ev("sqrt(-1)"), EvalError);
  CHECK_THROWS_AS(ev("2 ^ 0.5"), EvalError);
  CHECK_THROWS_AS(ev("x4"), EvalError);
  CHECK_THROWS_AS(ev("10 ^ 400"), EvalError);
  CHECK_THROWS_AS(ev("0 ^ -1"), EvalError);
  const auto bad = try_eval(parse_expr("1/x"), std::vector<double>{0});
  CHECK_FALSE(bad.ok);
  CHECK_FALSE(bad.error.empty());
  const auto good = try_eval(parse_expr("1/x"), std::vector<double>{4});
  CHECK(good.ok);
  CHECK(good.value == 0.25);
}

TEST_CASE("print round trip") {
  for (const char* t : {"1 + 2 * x", "-(y ^ 2) ^ 3", "min(x, abs(-y), 0.1)", "norm(x, y) / 3e-7", "2^3^2", "x - (y - z)"}) {
    const Expr e = parse_expr(t);
    const std::string s = print_expr(e);
    CHECK(structurally_equal(parse_expr(s), e));
    CHECK(print_expr(parse_expr(s)) == s);
  }
  CHECK_FALSE(structurally_equal(parse_expr("x + y"), parse_expr("y + x")));
}

namespace {

std::string random_expr(std::mt19937_64& rng, int depth) {
  std::uniform_int_distribution<int> pick(0, depth > 0 ? 9 : 1);
  std::uniform_int_distribution<int> small(0, 9);
  switch (pick(rng)) {
    case 0: return std::to_string(small(rng)) + "." + std::to_string(small(rng));
    case 1: return "x" + std::to_string(1 + small(rng) % 3);
    case 2: return "(" + random_expr(rng, depth - 1) + " + " + random_expr(rng, depth - 1) + ")";
    case 3: return random_expr(rng, depth - 1) + " - " + random_expr(rng, depth - 1);
    case 4: return random_expr(rng, depth - 1) + " * " + random_expr(rng, depth - 1);
    case 5: return "(" + random_expr(rng, depth - 1) + ") / (" + random_expr(rng, depth - 1) + ")";
    case 6: return "(" + random_expr(rng, depth - 1) + ")^" + std::to_string(small(rng) % 4);
    case 7: return "-" + random_expr(rng, depth - 1);
    case 8: return "max(" + random_expr(rng, depth - 1) + ", " + random_expr(rng, depth - 1) + ")";
    default: return "norm(" + random_expr(rng, depth - 1) + ")";
  }
}

}  // namespace

TEST_CASE("fuzz: random expressions round-trip and evaluate identically") {
  std::mt19937_64 rng(23);
  const std::vector<double> x = {0.3, -0.7, 1.1};
  for (int k = 0; k < 500; ++k) {
    const std::string text = random_expr(rng, 4);
    const Expr e = parse_expr(text);
    const Expr back = parse_expr(print_expr(e));
    REQUIRE_MESSAGE(structurally_equal(e, back), text);
    const auto a = try_eval(e, x), b = try_eval(back, x);
    CHECK(a.ok == b.ok);
    if (a.ok) CHECK(a.value == b.value);
  }
}

TEST_CASE("fuzz: garbage never escapes as anything but ParseError") {
  std::mt19937_64 rng(29);
  const std::string alphabet = "x1y2z+-*/^(),. 0e9minaxbsqrtno";
  std::uniform_int_distribution<std::size_t> ch(0, alphabet.size() - 1), len(0, 20);
  for (int k = 0; k < 3000; ++k) {
    std::string s;
    for (std::size_t n = len(rng); n > 0; --n) s += alphabet[ch(rng)];
    try {
      const Expr e = parse_expr(s);
      (void)try_eval(e, std::vector<double>{0.5, 0.5, 0.5});
    } catch (const ParseError& e) {
      CHECK(e.offset() <= s.size());
    }
  }
}
