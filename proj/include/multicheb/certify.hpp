#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "multicheb/minimax.hpp"
#include "multicheb/poly.hpp"
#include "multicheb/types.hpp"

namespace multicheb {

inline constexpr double kSeparatorBound = 1e6;
inline constexpr double kRayThreshold = 1e-9;

struct SeparatorResult {
  std::optional<Polynomial> separator;  // s <= -1 on N, s >= 1 on P
  std::vector<std::string> warnings;
};

// Throws InputError when N or P is empty or they share a point.
SeparatorResult strict_separator(const std::vector<Point>& neg, const std::vector<Point>& pos,
                                 const BasisPtr& basis, Arithmetic arithmetic = Arithmetic::Float,
                                 double bound = kSeparatorBound);

enum class Verdict { OptimalCertified, SuboptimalWitness };

std::string_view to_string(Verdict v);

struct Certificate {
  Verdict verdict = Verdict::OptimalCertified;
  std::optional<Polynomial> witness;
  double margin = 0.0;  // min |witness| over N u P
  double t = 0.0;       // max deviation of the candidate
  IndexSet neg_set, pos_set;
  // Descent along the witness, when there is one.
  double step = 0.0;
  double improved_t = 0.0;
  std::vector<std::string> warnings;
};

struct CertifyOptions {
  std::optional<double> tolerance;  // default active_tolerance(t(q))
  Arithmetic arithmetic = Arithmetic::Float;
};

// Throws NumericFailure("inconsistent certificate") when a witness exists
// but no step h = 2^-k, k <= 40, lowers the max deviation.
Certificate is_optimal(const Instance& inst, const Polynomial& q, const CertifyOptions& options = {});

struct ConeDimension {
  std::size_t dim_s = 0;
  std::vector<std::vector<double>> rays;  // spanning set of span K, linearly independent
};

// dim span K, K = {s in V : s >= 0 on N, s <= 0 on P}. Points present in both
// sets are forced to zero.
ConeDimension separating_cone_dimension(const std::vector<Point>& neg, const std::vector<Point>& pos,
                                        const Basis& basis,
                                        Arithmetic arithmetic = Arithmetic::Float);

struct SolutionDimension {
  std::size_t dim_q = 0;
  std::vector<std::vector<double>> directions;
  bool unbounded = false;
};

SolutionDimension solution_set_dimension(const Instance& inst, const SolveOptions& options = {});

struct DimensionReport {
  std::size_t dim_q = 0;
  std::size_t dim_s = 0;
  double t_star = 0.0;
  std::vector<std::vector<double>> q_directions;
  std::vector<std::vector<double>> s_rays;
  IndexSet essential_neg, essential_pos;
  bool unbounded = false;
  Arithmetic arithmetic = Arithmetic::Float;
  std::vector<std::string> warnings;
};

// Throws TheoryViolation when dim Q != dim S.
DimensionReport solution_vs_cone_dimension(const Instance& inst, const SolveOptions& options = {});

// Scaled to unit max-norm, with the largest-magnitude entry positive (the
// first such entry on ties).
std::vector<double> normalize_direction(std::vector<double> v);

// Angle between v and the line spanned by w, in radians.
double angle_to_line(const std::vector<double>& v, const std::vector<double>& w);

std::vector<Point> select_points(const Domain& d, const IndexSet& idx);

}  // namespace multicheb
