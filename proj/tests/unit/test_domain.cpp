#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <sstream>

#include "multicheb/domain.hpp"
#include "multicheb/errors.hpp"

using namespace multicheb;
using doctest::Approx;

TEST_CASE("deduplication keeps the first point and any label") {
  const Domain d(2, {{0, 0}, {1, 0}, {0, 1e-13}, {1, 0}}, {"", "a", "origin", "b"});
  REQUIRE(d.size() == 2);
  CHECK(d.label(0) == "origin");
  CHECK(d.label(1) == "a");
  CHECK(d.find(std::vector<double>{0, 0}) == 0u);
  CHECK(d.find(std::vector<double>{0.5, 0}) == std::nullopt);
  CHECK(d.find_label("a") == 1u);
  CHECK(d.find_label("b") == std::nullopt);
}

TEST_CASE("construction errors") {
  CHECK_THROWS_AS(Domain(2, {{0, 0}, {1}}), InputError);
  CHECK_THROWS_AS(Domain(1, {{NAN}}), InputError);
  CHECK_THROWS_AS(Domain(1, {{0}, {1}}, {"only one"}), InputError);
}

TEST_CASE("box grid") {
  const Domain g = box_grid({-1, -1}, {1, 1}, 5);
  CHECK(g.size() == 25);
  CHECK(g.provenance() == Provenance::BoxGrid);
  CHECK(g.find(std::vector<double>{-0.5, 0.5}).has_value());
  CHECK(g.find(std::vector<double>{0, 0}).has_value());
  // symmetric: every point's negative is also present, exactly
  for (const auto& p : g.points()) CHECK(g.find(std::vector<double>{-p[0], -p[1]}).has_value());
  CHECK_THROWS_AS(box_grid({0}, {1}, 1), InputError);
  CHECK_THROWS_AS(box_grid({0, 0}, {1}, 3), InputError);
}

TEST_CASE("disk grid and circle") {
  const Domain d = disk_grid({0, 0}, 1, 8, 24);
  CHECK(d.size() == 1 + 8 * 24);
  for (const auto& p : d.points()) CHECK(std::hypot(p[0], p[1]) <= 1 + 1e-12);
  // multiples of 30 degrees are exact
  const auto i = d.find(std::vector<double>{0.5, std::sqrt(3.0) / 2});
  REQUIRE(i.has_value());
  CHECK(d.point(*i)[0] == 0.5);
  const Domain c = circle_boundary({1, 1}, 2, 12);
  CHECK(c.size() == 12);
  for (const auto& p : c.points()) CHECK(std::hypot(p[0] - 1, p[1] - 1) == Approx(2));
}

TEST_CASE("with_points") {
  const Domain base = box_grid({0}, {1}, 3);
  const std::vector<Point> extra = {{0.5}, {2}};
  const std::vector<std::string> labels = {"mid", "far"};
  const Domain u = with_points(base, extra, labels);
  CHECK(u.size() == 4);
  CHECK(u.provenance() == Provenance::Union);
  CHECK(u.label(*u.find_label("mid")) == "mid");
  CHECK(u.find_label("far") == 3u);
}

TEST_CASE("CSV and JSON round trips") {
  const Domain d(2, {{0, 0.1}, {-1, 1e-300}, {0.333, 2}}, {"a", "", "c"});
  for (auto fmt : {DomainFormat::Csv, DomainFormat::Json}) {
    std::stringstream ss;
    write_domain(d, ss, fmt);
    CHECK(read_domain(ss, fmt) == d);
  }
}

TEST_CASE("CSV reader diagnostics") {
  std::istringstream ok("# comment\n1, 2\n\n3,4,label\n");
  const Domain d = read_domain(ok, DomainFormat::Csv);
  CHECK(d.size() == 2);
  CHECK(d.label(1) == "label");
  std::istringstream empty("# nothing\n");
  CHECK_THROWS_WITH_AS(read_domain(empty, DomainFormat::Csv), "empty domain", InputError);
  std::istringstream bad("1,2\n3,x,4\n");
  try {
    read_domain(bad, DomainFormat::Csv);
    FAIL("expected an error");
  } catch (const InputError& e) {
    CHECK(std::string(e.what()).find("line 2") != std::string::npos);
  }
  std::istringstream ragged("1,2\n3\n");
  CHECK_THROWS_AS(read_domain(ragged, DomainFormat::Csv), InputError);
  CHECK_THROWS_AS(load_domain("/nonexistent/file.csv"), InputError);
}

TEST_CASE("format_double is shortest round-trip") {
  CHECK(format_double(0.1) == "0.1");
  CHECK(format_double(2.0) == "2");
  CHECK(format_double(-0.5) == "-0.5");
  const double x = 1.0 / 3.0;
  CHECK(std::stod(format_double(x)) == x);
}
