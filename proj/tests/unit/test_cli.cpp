#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "json.hpp"

using namespace multicheb;
using nlohmann::json;

namespace {

struct Run {
  int code = -1;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  Run r;
  r.code = run_cli(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::string write(const std::string& name, const std::string& content) {
  const auto dir = std::filesystem::current_path() / "cli_fixtures";
  std::filesystem::create_directories(dir);
  const auto path = (dir / name).string();
  std::ofstream(path) << content;
  return path;
}

std::vector<std::vector<std::string>> csv_rows(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string c;
    while (std::getline(ss, c, ',')) cells.push_back(c);
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    rows.push_back(cells);
  }
  return rows;
}

}  // namespace

TEST_CASE("solve") {
  const Run r = run({"solve", "--function", "x^2", "--degree", "1", "--domain", "grid:[-1,1]:3"});
  REQUIRE(r.code == 0);
  const json j = json::parse(r.out);
  CHECK(j["t_star"].get<double>() == doctest::Approx(0.5));
  CHECK(j["coefficients"][0].get<double>() == doctest::Approx(0.5));

  const Run disk = run({"solve", "--builtin", "disk-sextic-deg2"});
  REQUIRE(disk.code == 0);
  CHECK(json::parse(disk.out)["t_star"].get<double>() == doctest::Approx(2.0));

  const Run csv = run({"solve", "--function", "x*y", "--degree", "1", "--domain", "grid:[-1,1]x[-1,1]:3", "--format", "csv"});
  REQUIRE(csv.code == 0);
  const auto rows = csv_rows(csv.out);
  CHECK(rows[0] == std::vector<std::string>{"x1", "x2", "f", "q", "f-q", "set"});
  CHECK(rows.size() == 10);

  const Run relint = run({"solve", "--builtin", "square-h-linear", "--relint"});
  REQUIRE(relint.code == 0);
  CHECK(json::parse(relint.out)["is_relint"] == true);
}

TEST_CASE("solve: sources and input errors") {
  const std::string good = write("samples.csv", "x1,x2,f\n0,0,1\n1,0,0\n0,1,0\n1,1,1\n");
  const Run s = run({"solve", "--samples", good, "--degree", "1"});
  CHECK(s.code == 0);
  CHECK(json::parse(s.out)["t_star"].get<double>() == doctest::Approx(0.5));

  CHECK(run({"solve", "--samples", write("novalues.csv", "x,y\n0,1\n"), "--degree", "1"}).code == 2);
  CHECK(run({"solve", "--samples", write("ragged.csv", "x,f\n0,1\n1\n"), "--degree", "1"}).code == 2);
  CHECK(run({"solve", "--samples", good}).code == 2);  // no degree
  CHECK(run({"solve", "--function", "x", "--degree", "1"}).code == 2);  // no domain
  CHECK(run({"solve", "--function", "x +", "--degree", "1", "--domain", "grid:[0,1]:3"}).code == 2);
  CHECK(run({"solve", "--function", "x3", "--degree", "1", "--domain", "grid:[0,1]:3"}).code == 2);
  CHECK(run({"solve", "--function", "1/x", "--degree", "1", "--domain", "grid:[0,1]:3"}).code == 2);
  CHECK(run({"solve", "--function", "x", "--degree", "1", "--domain", "grid:[0,1]"}).code == 2);
  CHECK(run({"solve", "--function", "x", "--builtin", "square-f-linear"}).code == 2);
  CHECK(run({"solve"}).code == 2);
  CHECK(run({"solve", "--builtin", "nope"}).code == 2);
  CHECK(run({"solve", "--builtin", "square-f-linear", "--resolution", "0.001"}).code == 2);
  CHECK(run({"solve", "--builtin", "square-f-linear", "--format", "xml"}).code == 2);
  CHECK(run({"solve", "--instance", write("bad.json", "{not json")}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({}).code == 2);
  // the LP gives up: numeric failure
  CHECK(run({"solve", "--builtin", "disk-sextic-deg2", "--max-pivots", "2"}).code == 3);
}

TEST_CASE("domain specs and files") {
  CHECK(run({"solve", "--function", "norm(x,y)", "--degree", "2", "--domain", "disk:(0,0):1:4:12"}).code == 0);
  CHECK(run({"solve", "--function", "x*y", "--degree", "1", "--domain", "circle:(0.5,0):2:16"}).code == 0);
  CHECK(run({"solve", "--function", "x", "--degree", "0", "--domain", write("d.csv", "0\n0.5\n1 \n")}).code == 0);
  CHECK(run({"solve", "--function", "x", "--degree", "0", "--domain", write("e.csv", "")}).code == 2);
  CHECK(run({"solve", "--function", "x", "--degree", "0", "--domain", write("d.json", R"({"points": [[0], [1]]})")}).code == 0);
}

TEST_CASE("certify") {
  const Run ok = run({"certify", "--builtin", "disk-sextic-deg2", "--candidate", "[-2,0,0,3,0,3]"});
  CHECK(ok.code == 0);
  CHECK(json::parse(ok.out)["verdict"] == "optimal");
  const Run zero = run({"certify", "--builtin", "disk-sextic-deg2", "--candidate", write("zero.json", "[0,0,0,0,0,0]")});
  CHECK(zero.code == 1);
  const json z = json::parse(zero.out);
  CHECK(z["verdict"] == "suboptimal");
  CHECK(z["witness"].size() == 6);
  CHECK(z["t"].get<double>() == doctest::Approx(3.0));
  CHECK(run({"certify", "--builtin", "disk-sextic-deg2", "--candidate", "[0,0]"}).code == 2);
  CHECK(run({"certify", "--builtin", "disk-sextic-deg2", "--candidate", write("junk.json", "[1,")}).code == 2);
  CHECK(run({"certify", "--builtin", "disk-sextic-deg2"}).code == 2);
  const Run csv = run({"certify", "--builtin", "square-h-linear", "--candidate", "[0,0,0.5]", "--format", "csv"});
  CHECK(csv.code == 0);
  CHECK(csv.out.rfind("key,value\nverdict,optimal\n", 0) == 0);
}

TEST_CASE("dimensions") {
  for (const char* id : {"disk-sextic-deg2", "square-h-linear"}) {
    const Run r = run({"dimensions", "--builtin", id});
    REQUIRE(r.code == 0);
    const json j = json::parse(r.out);
    CHECK(j["dim_Q"] == 1);
    CHECK(j["dim_S"] == 1);
  }
  const Run fit = run({"dimensions", "--function", "1+x", "--degree", "1", "--domain", "grid:[-1,1]:5"});
  REQUIRE(fit.code == 0);
  CHECK(json::parse(fit.out)["dim_Q"] == 0);
  CHECK(json::parse(fit.out)["dim_S"] == 0);
  CHECK(run({"dimensions", "--builtin", "disk-sextic-deg2", "--exact"}).code == 0);
}

TEST_CASE("bump") {
  const std::string n = write("n.csv", "1,0\n-0.5,0.8660254037844386\n-0.5,-0.8660254037844386\n");
  const std::string p = write("p.csv", "0.5,0.8660254037844386\n-1,0\n0.5,-0.8660254037844386\n");
  const Run r = run({"bump", "--N", n, "--P", p, "--domain", "disk:(0,0):2:8:24"});
  REQUIRE(r.code == 0);
  const json j = json::parse(r.out);
  CHECK(j["solution"]["t_star"].get<double>() == doctest::Approx(1.0));
  CHECK(j["zero_certificate"]["verdict"] == "optimal");
  CHECK(j["dimensions"]["dim_Q"] == 1);
  CHECK(j["dimensions"]["dim_S"] == 1);
  CHECK(r.err.empty());

  const std::string samples = (std::filesystem::current_path() / "cli_fixtures" / "bump_samples.csv").string();
  const Run sep = run({"bump", "--N", write("n1.csv", "0\n"), "--P", write("p1.csv", "1\n"), "--degree", "1",
                       "--samples-output", samples});
  CHECK(sep.code == 0);
  CHECK(sep.err.find("separable") != std::string::npos);
  std::ifstream in(samples);
  std::string header;
  std::getline(in, header);
  CHECK(header == "x1,f");

  CHECK(run({"bump", "--N", n, "--P", n}).code == 2);
  CHECK(run({"bump", "--N", n}).code == 2);
  CHECK(run({"bump", "--spec", write("spec.json", R"({"N": [[0]], "P": [[2]], "variant": "smooth"})"), "--degree", "2"}).code == 0);
  CHECK(run({"bump", "--N", n, "--P", p, "--variant", "blunt"}).code == 2);
}

TEST_CASE("reproduce") {
  const Run all = run({"reproduce", "--all"});
  CHECK(all.code == 0);
  CHECK(json::parse(all.out)["pass"] == true);
  CHECK(run({"reproduce", "--id", "nope"}).code == 2);
  CHECK(run({"reproduce"}).code == 2);
  CHECK(run({"reproduce", "--id", "square-f-linear", "--resolution", "0.001"}).code == 2);
  CHECK(run({"reproduce", "--id", "square-f-linear", "--resolution", "fine"}).code == 2);

  const Run sweep = run({"reproduce", "--id", "bump-smooth-hex", "--resolution", "sweep"});
  REQUIRE(sweep.code == 0);
  const auto rows = csv_rows(sweep.out);
  REQUIRE(rows.size() == 4);
  CHECK(rows[0].back() == "alpha_max");
  const double a0 = std::stod(rows[1].back()), a1 = std::stod(rows[2].back()), a2 = std::stod(rows[3].back());
  CHECK(a1 <= a0);
  CHECK(a2 <= a1);
  CHECK(a2 < a0 / 2);
}

TEST_CASE("plotdata") {
  const std::string pts = (std::filesystem::current_path() / "cli_fixtures" / "points.csv").string();
  const Run r = run({"plotdata", "--builtin", "disk-sextic-deg2", "--candidate", "[-2,0,0,3,0,3]", "--points-output", pts});
  REQUIRE(r.code == 0);
  CHECK(csv_rows(r.out)[0] == std::vector<std::string>{"x1", "x2", "f", "q", "f-q", "set"});
  std::ifstream in(pts);
  std::stringstream ss;
  ss << in.rdbuf();
  const auto rows = csv_rows(ss.str());
  REQUIRE(rows.size() == 8);
  std::set<std::string> labels;
  for (std::size_t k = 1; k < rows.size(); ++k) labels.insert(rows[k][3]);
  CHECK(labels == std::set<std::string>{"z0", "z1", "z2", "z3", "z4", "z5", "z6"});

  // q = y/2 on the square with h: the edges x = +-1, y <= 0 sit at deviation 1/2
  const Run h = run({"plotdata", "--builtin", "square-h-linear", "--candidate", "[0,0,0.5]"});
  REQUIRE(h.code == 0);
  int edge = 0;
  for (const auto& row : csv_rows(h.out)) {
    if (row[0] == "x1") continue;
    const double x = std::stod(row[0]), y = std::stod(row[1]);
    if (std::abs(x) == 1 && y <= 0) {
      CHECK(std::abs(std::stod(row[4])) == doctest::Approx(0.5));
      ++edge;
    }
  }
  CHECK(edge == 18);
  CHECK(run({"plotdata", "--function", "x", "--degree", "1", "--domain", write("empty.csv", "# none\n")}).code == 2);
  CHECK(run({"plotdata", "--builtin", "square-h-linear"}).code == 0);
}

TEST_CASE("outputs are deterministic and --output writes files") {
  for (std::vector<std::string> args : {std::vector<std::string>{"solve", "--builtin", "square-g-linear"},
                                        {"dimensions", "--builtin", "bump-sharp-hex"},
                                        {"reproduce", "--all"},
                                        {"plotdata", "--builtin", "disk-sextic-deg2"}}) {
    CHECK(run(args).out == run(args).out);
  }
  const std::string path = (std::filesystem::current_path() / "cli_fixtures" / "out.json").string();
  const Run r = run({"solve", "--builtin", "square-f-linear", "--output", path});
  CHECK(r.code == 0);
  CHECK(r.out.empty());
  std::ifstream in(path);
  CHECK(json::parse(in)["t_star"].get<double>() == doctest::Approx(0.5));
}

TEST_CASE("help exits cleanly") {
  const Run r = run({"--help"});
  CHECK(r.code == 0);
  CHECK(r.out.find("solve") != std::string::npos);
  CHECK(run({"solve", "--help"}).code == 0);
}
