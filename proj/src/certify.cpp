#include "multicheb/certify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "multicheb/errors.hpp"
#include "multicheb/kernels.hpp"

namespace multicheb {

std::string_view to_string(Verdict v) {
  return v == Verdict::OptimalCertified ? "optimal" : "suboptimal";
}

std::vector<Point> select_points(const Domain& d, const IndexSet& idx) {
  std::vector<Point> out;
  out.reserve(idx.size());
  for (std::size_t i : idx) out.push_back(d.point(i));
  return out;
}

namespace {

bool shares_point(const std::vector<Point>& a, const std::vector<Point>& b) {
  for (const auto& p : a)
    for (const auto& q : b) {
      double s = 0.0;
      for (std::size_t k = 0; k < p.size(); ++k) s += (p[k] - q[k]) * (p[k] - q[k]);
      if (std::sqrt(s) <= kDedupTolerance) return true;
    }
  return false;
}

void check_sets(const std::vector<Point>& neg, const std::vector<Point>& pos, const Basis& basis) {
  if (neg.empty() || pos.empty()) throw InputError("N and P must both be nonempty");
  for (const auto* set : {&neg, &pos})
    for (const auto& p : *set)
      if (p.size() != basis.n()) throw InputError("point dimension does not match the basis");
}

template <class S>
std::optional<std::vector<double>> separator_lp(const Matrix<S>& gn, const Matrix<S>& gp,
                                                double bound, bool& near_bound) {
  const std::size_t m = gn.cols();
  LinearProgramT<S> lp(m + 1);
  lp.objective[m] = S(1);
  for (std::size_t i = 0; i < gn.rows(); ++i) {
    std::vector<S> row(gn.row(i).begin(), gn.row(i).end());
    row.push_back(S(0));
    lp.add(std::move(row), Relation::LessEqual, S(-1));
  }
  for (std::size_t i = 0; i < gp.rows(); ++i) {
    std::vector<S> row(gp.row(i).begin(), gp.row(i).end());
    row.push_back(S(0));
    lp.add(std::move(row), Relation::GreaterEqual, S(1));
  }
  for (std::size_t j = 0; j < m; ++j) {
    std::vector<S> up(m + 1, S(0)), down(m + 1, S(0));
    up[j] = S(1);
    up[m] = S(-1);
    down[j] = S(-1);
    down[m] = S(-1);
    lp.add(std::move(up), Relation::LessEqual, S(0));
    lp.add(std::move(down), Relation::LessEqual, S(0));
  }
  lp.upper[m] = ScalarTraits<S>::from_double(bound);
  auto res = solve(lp);
  if (res.status == LpStatus::Infeasible) return std::nullopt;
  if (res.status != LpStatus::Optimal)
    throw NumericFailure("separator LP returned " + std::string(to_string(res.status)));
  near_bound = to_double(res.primal[m]) >= bound * (1.0 - 1e-6);
  std::vector<double> c(m);
  for (std::size_t j = 0; j < m; ++j) c[j] = to_double(res.primal[j]);
  return c;
}

}  // namespace

namespace {

// One side may be empty here: a candidate whose deviation is attained with
// a single sign is improved by any p of that sign on the attained set.
SeparatorResult find_separator(const std::vector<Point>& neg, const std::vector<Point>& pos,
                               const BasisPtr& basis, Arithmetic arithmetic, double bound) {
  bool near = false;
  std::optional<std::vector<double>> c;
  if (arithmetic == Arithmetic::Exact) {
    c = separator_lp(design_matrix_exact(*basis, neg), design_matrix_exact(*basis, pos), bound, near);
  } else {
    c = separator_lp(design_matrix(*basis, neg), design_matrix(*basis, pos), bound, near);
  }
  SeparatorResult out;
  if (c) out.separator = Polynomial(basis, std::move(*c));
  if (near) out.warnings.push_back("separator near box bound, result may be scale-limited");
  return out;
}

}  // namespace

SeparatorResult strict_separator(const std::vector<Point>& neg, const std::vector<Point>& pos,
                                 const BasisPtr& basis, Arithmetic arithmetic, double bound) {
  check_sets(neg, pos, *basis);
  if (shares_point(neg, pos)) throw InputError("N and P overlap; strict separation is undefined");
  return find_separator(neg, pos, basis, arithmetic, bound);
}

Certificate is_optimal(const Instance& inst, const Polynomial& q, const CertifyOptions& options) {
  if (!(q.basis() == inst.basis())) throw InputError("candidate is over a different basis");
  const double t0 = deviation_sets(inst, q, 0.0).t;
  const double tol = options.tolerance.value_or(active_tolerance(t0));
  const DeviationSets sets = deviation_sets(inst, q, tol);
  Certificate cert;
  cert.t = sets.t;
  cert.neg_set = sets.neg;
  cert.pos_set = sets.pos;
  IndexSet both;
  std::set_intersection(sets.neg.begin(), sets.neg.end(), sets.pos.begin(), sets.pos.end(),
                        std::back_inserter(both));
  // A point counted in both sets means q interpolates f there with t ~ 0;
  // nothing can push the deviation down at such a point, so q is optimal.
  if (!both.empty()) return cert;

  const auto sep = find_separator(select_points(inst.domain(), sets.neg),
                                  select_points(inst.domain(), sets.pos), inst.basis_ptr(),
                                  options.arithmetic, kSeparatorBound);
  cert.warnings = sep.warnings;
  if (!sep.separator) return cert;

  const Polynomial& s = *sep.separator;
  cert.verdict = Verdict::SuboptimalWitness;
  const auto gs = kernels::residuals(inst.design(), s.coeffs(),
                                     std::vector<double>(inst.size(), 0.0), Exec::Parallel);
  double margin = std::numeric_limits<double>::infinity();
  for (const auto* set : {&sets.neg, &sets.pos})
    for (std::size_t i : *set) margin = std::min(margin, std::abs(gs[i]));
  cert.margin = margin;
  cert.witness = s;

  // s < 0 where q overshoots and s > 0 where it undershoots, so q + h s
  // improves for small h.
  double h = 1.0;
  for (int k = 0; k <= 40; ++k, h *= 0.5) {
    const Polynomial cand = q + s * h;
    const double t = deviation_sets(inst, cand, 0.0).t;
    if (t < sets.t) {
      cert.step = h;
      cert.improved_t = t;
      return cert;
    }
  }
  throw NumericFailure("inconsistent certificate: witness found but no descent step lowers the deviation");
}

namespace {

template <class S>
std::vector<std::vector<S>> complement_basis(const std::vector<std::vector<S>>& span, std::size_t m) {
  if (span.empty()) {
    std::vector<std::vector<S>> id(m, std::vector<S>(m, S(0)));
    for (std::size_t j = 0; j < m; ++j) id[j][j] = S(1);
    return id;
  }
  return null_space(Matrix<S>::from_rows(span, m));
}

template <class S>
ConeDimension cone_dimension(const Matrix<S>& gn, const Matrix<S>& gp) {
  using T = ScalarTraits<S>;
  const std::size_t m = gn.cols();
  std::vector<std::vector<S>> all_rows;
  for (std::size_t i = 0; i < gn.rows(); ++i) all_rows.emplace_back(gn.row(i).begin(), gn.row(i).end());
  for (std::size_t i = 0; i < gp.rows(); ++i) all_rows.emplace_back(gp.row(i).begin(), gp.row(i).end());
  std::vector<std::vector<S>> span = null_space(Matrix<S>::from_rows(all_rows, m));

  LinearProgramT<S> lp(m);
  for (std::size_t i = 0; i < gn.rows(); ++i)
    lp.add(std::vector<S>(gn.row(i).begin(), gn.row(i).end()), Relation::GreaterEqual, S(0));
  for (std::size_t i = 0; i < gp.rows(); ++i)
    lp.add(std::vector<S>(gp.row(i).begin(), gp.row(i).end()), Relation::LessEqual, S(0));
  for (std::size_t j = 0; j < m; ++j) {
    lp.lower[j] = S(-1);
    lp.upper[j] = S(1);
  }

  bool grew = true;
  while (grew && span.size() < m) {
    grew = false;
    for (const auto& u : complement_basis(span, m)) {
      for (int sign : {1, -1}) {
        for (std::size_t j = 0; j < m; ++j) lp.objective[j] = sign > 0 ? S(-u[j]) : S(u[j]);
        auto res = solve(lp);
        if (res.status != LpStatus::Optimal)
          throw NumericFailure("cone ray LP returned " + std::string(to_string(res.status)));
        const S value = -res.objective_value;
        if (T::positive(value, kRayThreshold)) {
          span.push_back(std::move(res.primal));
          grew = true;
          break;
        }
      }
      if (grew) break;
    }
  }
  ConeDimension out;
  out.dim_s = static_cast<std::size_t>(rank_of(Matrix<S>::from_rows(span, m)));
  for (const auto& v : span) {
    std::vector<double> d(m);
    for (std::size_t j = 0; j < m; ++j) d[j] = to_double(v[j]);
    out.rays.push_back(std::move(d));
  }
  return out;
}

}  // namespace

ConeDimension separating_cone_dimension(const std::vector<Point>& neg, const std::vector<Point>& pos,
                                        const Basis& basis, Arithmetic arithmetic) {
  check_sets(neg, pos, basis);
  if (arithmetic == Arithmetic::Exact)
    return cone_dimension(design_matrix_exact(basis, neg), design_matrix_exact(basis, pos));
  return cone_dimension(design_matrix(basis, neg), design_matrix(basis, pos));
}

SolutionDimension solution_set_dimension(const Instance& inst, const SolveOptions& options) {
  FaceAnalysis face = analyze_optimal_face(inst, options);
  return {face.dim_q, std::move(face.directions), face.unbounded};
}

DimensionReport solution_vs_cone_dimension(const Instance& inst, const SolveOptions& options) {
  FaceAnalysis face = analyze_optimal_face(inst, options);
  DimensionReport rep;
  rep.dim_q = face.dim_q;
  rep.t_star = face.t_star;
  rep.q_directions = std::move(face.directions);
  rep.essential_neg = std::move(face.essential_neg);
  rep.essential_pos = std::move(face.essential_pos);
  rep.unbounded = face.unbounded;
  rep.arithmetic = face.arithmetic;
  rep.warnings = std::move(face.warnings);
  // Essential sets of an optimum with t* > 0 are never both empty; guard anyway.
  if (rep.essential_neg.empty() || rep.essential_pos.empty()) {
    std::ostringstream os;
    os << "theory violation: check tolerances: an essential set is empty (|N| = "
       << rep.essential_neg.size() << ", |P| = " << rep.essential_pos.size()
       << ", t* = " << rep.t_star << ")";
    throw TheoryViolation(os.str());
  }
  const ConeDimension cone = separating_cone_dimension(select_points(inst.domain(), rep.essential_neg),
                                                       select_points(inst.domain(), rep.essential_pos),
                                                       inst.basis(), options.arithmetic);
  rep.dim_s = cone.dim_s;
  rep.s_rays = cone.rays;
  if (rep.dim_q != rep.dim_s) {
    std::ostringstream os;
    os << "theory violation: check tolerances: dim Q = " << rep.dim_q << ", dim S = " << rep.dim_s
       << (rep.dim_q > rep.dim_s ? " (dim Q exceeds dim S)" : " (dimensions differ on a finite domain)")
       << "; t* = " << rep.t_star << ", |N| = " << rep.essential_neg.size()
       << ", |P| = " << rep.essential_pos.size() << ", |X| = " << inst.size()
       << ", dim V = " << inst.dim();
    throw TheoryViolation(os.str());
  }
  return rep;
}

std::vector<double> normalize_direction(std::vector<double> v) {
  std::size_t arg = 0;
  for (std::size_t j = 1; j < v.size(); ++j)
    if (std::abs(v[j]) > std::abs(v[arg]) * (1.0 + 1e-12)) arg = j;
  if (v.empty() || v[arg] == 0.0) return v;
  const double scale = v[arg];
  for (auto& x : v) x /= scale;
  return v;
}

double angle_to_line(const std::vector<double>& v, const std::vector<double>& w) {
  if (v.size() != w.size()) throw InputError("angle_to_line: size mismatch");
  const double vv = std::inner_product(v.begin(), v.end(), v.begin(), 0.0);
  const double ww = std::inner_product(w.begin(), w.end(), w.begin(), 0.0);
  const double vw = std::inner_product(v.begin(), v.end(), w.begin(), 0.0);
  if (vv == 0.0 || ww == 0.0) throw InputError("angle_to_line: zero vector");
  // Residual of v after projecting onto w; stable for tiny angles.
  double rr = 0.0;
  for (std::size_t j = 0; j < v.size(); ++j) {
    const double d = v[j] - vw / ww * w[j];
    rr += d * d;
  }
  return std::atan2(std::sqrt(rr), std::abs(vw) / std::sqrt(ww));
}

}  // namespace multicheb
