#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "multicheb/domain.hpp"
#include "multicheb/minimax.hpp"
#include "multicheb/poly.hpp"

namespace multicheb {

enum class BumpVariant { Sharp, Smooth };

std::string_view to_string(BumpVariant v);
BumpVariant parse_bump_variant(std::string_view s);

struct BumpSpec {
  std::vector<Point> neg;
  std::vector<Point> pos;
  double d = 0.0;  // min Euclidean distance between N and P
  BumpVariant variant = BumpVariant::Sharp;

  // Validates the sets and computes d. Throws InputError on empty,
  // overlapping or dimension-inconsistent sets.
  static BumpSpec make(std::vector<Point> neg, std::vector<Point> pos, BumpVariant variant);
};

double min_distance(const std::vector<Point>& a, const std::vector<Point>& b);

// +1 on P, -1 on N, values in [-1, 1]. Sharp bumps are cones of radius d/2,
// smooth ones are truncated paraboloids of the same radius.
class Bump {
 public:
  explicit Bump(BumpSpec spec) : spec_(std::move(spec)) {}
  const BumpSpec& spec() const { return spec_; }
  double operator()(std::span<const double> x) const;

 private:
  double profile(double dist) const;
  BumpSpec spec_;
};

Bump make_bump(std::vector<Point> neg, std::vector<Point> pos, BumpVariant variant);

struct BumpInstance {
  Instance instance;
  BumpSpec spec;
  std::vector<std::string> warnings;
};

// Samples the bump on domain plus the points of N and P (labelled N1.., P1..).
BumpInstance bump_instance(const BumpSpec& spec, const Domain& domain, const BasisPtr& basis);

struct AlphaRange {
  double lo = 0.0;  // most negative alpha found optimal
  double hi = 0.0;
  bool unbounded_lo = false;
  bool unbounded_hi = false;
  double max_abs() const { return std::max(-lo, hi); }
};

// Interval of alpha with base + alpha * direction still attaining t_star
// (within 1e-9 (1 + t_star)), located by doubling then bisection to
// `resolution`. Assumes base itself is optimal.
AlphaRange optimal_alpha_range(const Instance& inst, const std::vector<double>& base,
                               const std::vector<double>& direction, double t_star,
                               double resolution = 1e-6);

}  // namespace multicheb
