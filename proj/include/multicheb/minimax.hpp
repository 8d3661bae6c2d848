#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "multicheb/domain.hpp"
#include "multicheb/linalg.hpp"
#include "multicheb/lp.hpp"
#include "multicheb/poly.hpp"
#include "multicheb/types.hpp"

namespace multicheb {

// One approximation problem: values of f on a finite domain, and a basis.
class Instance {
 public:
  Instance(Domain domain, std::vector<double> values, BasisPtr basis);

  const Domain& domain() const { return domain_; }
  const std::vector<double>& values() const { return values_; }
  const Basis& basis() const { return *basis_; }
  const BasisPtr& basis_ptr() const { return basis_; }
  const Matrix<double>& design() const { return design_; }
  std::size_t size() const { return values_.size(); }
  std::size_t dim() const { return basis_->size(); }

 private:
  Domain domain_;
  std::vector<double> values_;
  BasisPtr basis_;
  Matrix<double> design_;
};

struct SolveOptions {
  Arithmetic arithmetic = Arithmetic::Float;
  // Absolute band for active sets; defaults to active_tolerance(t*).
  std::optional<double> tolerance;
  LpOptions lp;
};

// 1e-7 * (1 + t)
double active_tolerance(double t);

struct Solution {
  Polynomial q;
  double t_star = 0.0;
  IndexSet neg_set;  // q - f attains t_star
  IndexSet pos_set;  // f - q attains t_star
  bool is_relint = false;
  bool unbounded = false;  // the design matrix on X is column-rank deficient
  std::vector<std::string> warnings;
};

Solution solve_minimax(const Instance& inst, const SolveOptions& options = {});

struct DeviationSets {
  IndexSet neg;
  IndexSet pos;
  double t = 0.0;  // max |f - q| over X
};

DeviationSets deviation_sets(const Instance& inst, const Polynomial& q, double tol);
DeviationSets deviation_sets(const Instance& inst, const std::vector<double>& coeffs, double tol);

// Everything known about the optimal face {c : |f - G c| <= t*}.
struct FaceAnalysis {
  double t_star = 0.0;
  std::vector<double> vertex;  // simplex solution
  std::vector<double> relint;  // average of the vertex and all slack maximizers
  IndexSet vertex_neg, vertex_pos;
  IndexSet essential_neg, essential_pos;  // implicit equalities of the face
  std::size_t dim_q = 0;
  std::vector<std::vector<double>> directions;  // basis of the face's linear hull
  bool unbounded = false;
  Arithmetic arithmetic = Arithmetic::Float;
  std::vector<std::string> warnings;
};

FaceAnalysis analyze_optimal_face(const Instance& inst, const SolveOptions& options = {});

Solution relint_solution(const Instance& inst, const SolveOptions& options = {});

std::pair<IndexSet, IndexSet> essential_sets(const Instance& inst, const SolveOptions& options = {});

struct ContainmentReport {
  bool pass = true;
  IndexSet missing_neg, missing_pos;  // essential points p does not attain
  IndexSet extra_neg, extra_pos;      // points p attains beyond the essential sets
};

// Throws InputError("containment undefined for suboptimal p") when p is not
// optimal within tolerance.
ContainmentReport verify_containment(const Instance& inst, const Polynomial& p,
                                     const SolveOptions& options = {});

// Maximizer of objective.c over {c : |f - G c| <= t, |c - center|_inf <= radius}.
// Used to probe the optimal face.
std::vector<double> face_point(const Instance& inst, double t, const std::vector<double>& objective,
                               const std::vector<double>& center, double radius);

}  // namespace multicheb
