#pragma once

// Dense linear programming.
//
// solve_lp / solve_lp_exact accept a general LP
//
//     minimize  c.x   subject to  a_k.x (<=|=|>=) b_k,   lo_j <= x_j <= hi_j
//
// with any bound allowed to be absent. Internally the problem is brought to
// the canonical inequality form A x <= b with x free, and the two-phase primal
// simplex (Bland's rule) runs on its dual
//
//     minimize  b.y   subject to  A^T y = -c,  y >= 0,
//
// whose row count is the number of primal variables. Every LP in this library
// has few variables and many inequality rows, so the dual tableau is tiny.
// The primal solution is read off the simplex multipliers of the dual.

#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

#include "multicheb/linalg.hpp"
#include "multicheb/rational.hpp"

namespace multicheb {

enum class Relation { LessEqual, Equal, GreaterEqual };

enum class LpStatus { Optimal, Infeasible, Unbounded, NumericFailure };

std::string_view to_string(LpStatus status);

template <class S>
struct LinearConstraint {
  std::vector<S> coeffs;
  Relation relation = Relation::LessEqual;
  S rhs = S(0);
};

template <class S>
struct LinearProgramT {
  explicit LinearProgramT(std::size_t num_vars = 0)
      : objective(num_vars, S(0)), lower(num_vars), upper(num_vars) {}

  std::size_t num_vars() const { return objective.size(); }

  void add(std::vector<S> coeffs, Relation rel, S rhs) {
    constraints.push_back({std::move(coeffs), rel, std::move(rhs)});
  }

  // Throws InputError on any length mismatch.
  void validate() const;

  std::vector<S> objective;  // minimized
  std::vector<LinearConstraint<S>> constraints;
  std::vector<std::optional<S>> lower;  // nullopt = -inf
  std::vector<std::optional<S>> upper;  // nullopt = +inf
};

// Multipliers follow the convention
//   c = sum_k dual[k] * a_k + lower_dual - upper_dual,
// with dual[k] <= 0 on <= rows, >= 0 on >= rows, free on equalities and
// lower_dual, upper_dual >= 0. Then c.x* equals
//   sum_k dual[k] b_k + lower_dual.lo - upper_dual.hi.
template <class S>
struct LpResultT {
  LpStatus status = LpStatus::NumericFailure;
  std::vector<S> primal;
  std::vector<S> dual;
  std::vector<S> lower_dual;
  std::vector<S> upper_dual;
  S objective_value = S(0);
  std::size_t pivots = 0;
};

using LinearProgram = LinearProgramT<double>;
using ExactLinearProgram = LinearProgramT<Rational>;
using LpResult = LpResultT<double>;
using ExactLpResult = LpResultT<Rational>;

struct LpOptions {
  std::size_t max_pivots = 1'000'000;
  double pivot_tol = 1e-9;  // float mode only
  std::size_t refactor_every = 50;
};

LpResult solve_lp(const LinearProgram& lp, const LpOptions& options = {});
ExactLpResult solve_lp_exact(const ExactLinearProgram& lp, const LpOptions& options = {});

template <class S>
LpResultT<S> solve(const LinearProgramT<S>& lp, const LpOptions& options = {});

ExactLinearProgram to_exact(const LinearProgram& lp);

// Standard form: minimize c.y subject to A y = b, y >= 0.
template <class S>
struct StandardFormResult {
  LpStatus status = LpStatus::NumericFailure;
  std::vector<S> x;
  std::vector<S> multipliers;  // w with c_j - w.A_j >= 0 at optimality
  S objective_value = S(0);
  std::size_t pivots = 0;
};

// `columns` holds A transposed: row j of `columns` is column j of A.
template <class S>
StandardFormResult<S> solve_standard_form(const Matrix<S>& columns, const std::vector<S>& b,
                                          const std::vector<S>& c,
                                          const LpOptions& options = {});

}  // namespace multicheb
