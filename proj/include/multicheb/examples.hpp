#pragma once

#include <optional>
#include <string>
#include <vector>

#include "multicheb/certify.hpp"
#include "multicheb/minimax.hpp"

namespace multicheb {

inline constexpr double kDefaultResolution = 0.125;
inline constexpr double kMinResolution = 0.02;
inline constexpr double kMaxResolution = 0.5;

struct KnownOptimum {
  std::string name;
  std::vector<double> coeffs;
};

struct Expected {
  double t_star = 0.0;
  std::vector<std::string> essential_neg;  // point labels
  std::vector<std::string> essential_pos;
  std::vector<KnownOptimum> optima;
  std::size_t dim_q = 0;
  std::size_t dim_s = 0;
  std::optional<std::vector<double>> direction;  // expected span of Q - q
  std::vector<double> base;                      // optimum the alpha study starts from
  std::string citation;
};

struct PaperInstance {
  std::string id;
  std::string description;
  std::string function;  // human-readable formula for f
  double resolution = kDefaultResolution;
  Instance instance;
  Expected expected;
};

std::vector<std::string> instance_ids();

// resolution is the grid spacing h, in [kMinResolution, kMaxResolution].
// Throws InputError for unknown ids (listing the known ones) or bad h.
PaperInstance get_instance(const std::string& id, double resolution = kDefaultResolution);

// Hexagon vertices z1..z6 on the unit circle and z0 = origin.
std::vector<Point> hexagon_points();  // z0..z6

struct Check {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct InstanceReport {
  std::string id;
  double resolution = 0.0;
  std::size_t points = 0;
  bool pass = false;
  std::string error;  // set when the instance could not be run
  double t_star = 0.0;
  std::size_t dim_q = 0, dim_s = 0;
  std::vector<Check> checks;
};

struct RunReport {
  double resolution = 0.0;
  bool pass = false;
  std::vector<InstanceReport> instances;
};

InstanceReport run_instance(const std::string& id, double resolution = kDefaultResolution,
                            const SolveOptions& options = {});
RunReport run_all(double resolution = kDefaultResolution, const SolveOptions& options = {});

struct RefinementRow {
  std::string id;
  double spacing = 0.0;
  std::size_t points = 0;
  double t_star = 0.0;
  std::size_t dim_q = 0, dim_s = 0;
  double alpha_max = 0.0;  // max |alpha| with base + alpha * ray optimal
  std::vector<double> ray;
};

inline const std::vector<double> kRefinementSpacings = {0.2, 0.1, 0.05};

std::vector<RefinementRow> refinement_study(const std::string& id,
                                            const std::vector<double>& spacings = kRefinementSpacings);

}  // namespace multicheb
