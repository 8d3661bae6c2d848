#include "multicheb/minimax.hpp"

#include <algorithm>
#include <cmath>
#include <exception>

#include "multicheb/errors.hpp"
#include "multicheb/kernels.hpp"

namespace multicheb {

Instance::Instance(Domain domain, std::vector<double> values, BasisPtr basis)
    : domain_(std::move(domain)), values_(std::move(values)), basis_(std::move(basis)) {
  if (!basis_) throw InputError("instance without a basis");
  if (domain_.empty()) throw InputError("empty domain");
  if (values_.size() != domain_.size())
    throw InputError("instance has " + std::to_string(values_.size()) + " values for " +
                     std::to_string(domain_.size()) + " points");
  if (domain_.n() != basis_->n())
    throw InputError("domain is " + std::to_string(domain_.n()) + "-dimensional, basis is in " +
                     std::to_string(basis_->n()) + " variables");
  for (std::size_t i = 0; i < values_.size(); ++i)
    if (!std::isfinite(values_[i]))
      throw InputError("value at point " + std::to_string(i) + " is not finite");
  design_ = design_matrix(*basis_, domain_.points());
}

double active_tolerance(double t) { return 1e-7 * (1.0 + std::abs(t)); }

DeviationSets deviation_sets(const Instance& inst, const std::vector<double>& coeffs, double tol) {
  if (coeffs.size() != inst.dim())
    throw InputError("candidate has " + std::to_string(coeffs.size()) +
                     " coefficients, basis has " + std::to_string(inst.dim()));
  const auto r = kernels::residuals(inst.design(), coeffs, inst.values(), Exec::Parallel);
  DeviationSets out;
  out.t = kernels::max_abs(r, Exec::Parallel);
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (-r[i] >= out.t - tol) out.neg.push_back(i);
    if (r[i] >= out.t - tol) out.pos.push_back(i);
  }
  return out;
}

DeviationSets deviation_sets(const Instance& inst, const Polynomial& q, double tol) {
  if (!(q.basis() == inst.basis())) throw InputError("polynomial is over a different basis");
  return deviation_sets(inst, q.coeffs(), tol);
}

namespace {

template <class S>
using Vec = std::vector<S>;

template <class S>
Vec<double> to_doubles(const Vec<S>& v) {
  Vec<double> out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = to_double(v[i]);
  return out;
}

template <class S>
Vec<S> values_as(const Instance& inst) {
  Vec<S> f(inst.size());
  for (std::size_t i = 0; i < f.size(); ++i) f[i] = ScalarTraits<S>::from_double(inst.values()[i]);
  return f;
}

// Constraint 2i bounds f_i - G_i c by t (its slack vanishing puts i in P),
// constraint 2i+1 bounds G_i c - f_i by t (i in N).
template <class S>
LinearProgramT<S> face_lp(const Matrix<S>& g, const Vec<S>& f, const S& t) {
  const std::size_t m = g.cols();
  LinearProgramT<S> lp(m);
  for (std::size_t i = 0; i < g.rows(); ++i) {
    Vec<S> neg(m), pos(m);
    for (std::size_t j = 0; j < m; ++j) {
      neg[j] = -g(i, j);
      pos[j] = g(i, j);
    }
    lp.add(std::move(neg), Relation::LessEqual, t - f[i]);
    lp.add(std::move(pos), Relation::LessEqual, t + f[i]);
  }
  return lp;
}

template <class S>
S slack(const LinearProgramT<S>& lp, std::size_t k, const Vec<S>& c) {
  const auto& row = lp.constraints[k];
  S acc = row.rhs;
  for (std::size_t j = 0; j < c.size(); ++j) acc -= row.coeffs[j] * c[j];
  return acc;
}

template <class S>
std::pair<Vec<S>, S> solve_vertex(const Matrix<S>& g, const Vec<S>& f, const LpOptions& opt) {
  const std::size_t m = g.cols();
  LinearProgramT<S> lp(m + 1);
  lp.objective[m] = S(1);
  for (std::size_t i = 0; i < g.rows(); ++i) {
    Vec<S> neg(m + 1), pos(m + 1);
    for (std::size_t j = 0; j < m; ++j) {
      neg[j] = -g(i, j);
      pos[j] = g(i, j);
    }
    neg[m] = S(-1);
    pos[m] = S(-1);
    lp.add(std::move(neg), Relation::LessEqual, -f[i]);
    lp.add(std::move(pos), Relation::LessEqual, f[i]);
  }
  auto res = solve(lp, opt);
  if (res.status != LpStatus::Optimal)
    throw NumericFailure(std::string("minimax LP returned ") + std::string(to_string(res.status)));
  S t = res.primal[m];
  res.primal.resize(m);
  return {std::move(res.primal), std::move(t)};
}

void split_constraints(const std::vector<std::size_t>& ks, IndexSet& neg, IndexSet& pos) {
  for (std::size_t k : ks) (k % 2 == 0 ? pos : neg).push_back(k / 2);
  std::sort(neg.begin(), neg.end());
  std::sort(pos.begin(), pos.end());
}

template <class S>
void fill_dimension(const Matrix<S>& g, const std::vector<std::size_t>& rows, FaceAnalysis& out) {
  const Matrix<S> sub = g.select_rows(rows);
  const auto kernel = null_space(sub);
  out.dim_q = kernel.size();
  out.directions.clear();
  for (const auto& v : kernel) out.directions.push_back(to_doubles(v));
}

template <class S>
FaceAnalysis analyze(const Instance& inst, const SolveOptions& opt) {
  using T = ScalarTraits<S>;
  const Matrix<S> g = design_matrix_as<S>(inst.basis(), inst.domain().points());
  const Vec<S> f = values_as<S>(inst);
  const std::size_t m = inst.dim();

  FaceAnalysis out;
  out.arithmetic = T::exact ? Arithmetic::Exact : Arithmetic::Float;
  if (m > inst.size())
    out.warnings.push_back("interpolation regime: basis larger than domain, solution set is unbounded");

  auto [vertex, t_star] = solve_vertex(g, f, opt.lp);
  out.t_star = to_double(t_star);
  out.vertex = to_doubles(vertex);
  const double tol = opt.tolerance.value_or(active_tolerance(out.t_star));
  out.unbounded = static_cast<std::size_t>(rank_of(g)) < m;

  auto is_zero = [&](const S& s) {
    if constexpr (T::exact) {
      return sgn(s) == 0;
    } else {
      return s <= tol;
    }
  };

  std::vector<std::size_t> all(inst.size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;

  if (is_zero(t_star) || (!T::exact && out.t_star <= tol)) {
    // q = f on X: every constraint is tight everywhere on the face.
    out.relint = out.vertex;
    out.vertex_neg = out.vertex_pos = out.essential_neg = out.essential_pos = all;
    fill_dimension(g, all, out);
    return out;
  }

  // Float mode probes the face widened by a tiny shift, since at t* itself
  // round-off can make it empty. A widened face is wider by up to the
  // conditioning of G times the shift, so a row that looks slack there is
  // probed again at a hundredfold smaller shift: an implicit equality's
  // maximal slack shrinks with the shift, a genuinely slack row's does not.
  S t_face = t_star, t_fine = t_star;
  if constexpr (!T::exact) {
    t_face = t_star + 1e-10 * (1.0 + out.t_star);
    t_fine = t_star + 1e-12 * (1.0 + out.t_star);
  }
  const LinearProgramT<S> base = face_lp(g, f, t_face);
  const LinearProgramT<S> fine = T::exact ? LinearProgramT<S>{} : face_lp(g, f, t_fine);

  std::vector<std::size_t> active;
  for (std::size_t k = 0; k < base.constraints.size(); ++k) {
    S s = slack(base, k, vertex);
    if constexpr (!T::exact) s -= t_face - t_star;
    if (is_zero(s)) active.push_back(k);
  }
  split_constraints(active, out.vertex_neg, out.vertex_pos);

  // Slack maximizers, one per vertex-active constraint. Independent LPs;
  // results land in index-ordered slots so the merge is deterministic.
  const auto count = static_cast<long>(active.size());
  std::vector<Vec<S>> maximizers(active.size());
  std::vector<char> implicit(active.size(), 0);
  std::vector<std::exception_ptr> errors(active.size());
#pragma omp parallel for schedule(dynamic)
  for (long a = 0; a < count; ++a) {
    try {
      const std::size_t k = active[a];
      LinearProgramT<S> lp = base;
      lp.objective = base.constraints[k].coeffs;  // min a_k.c = max slack_k
      auto res = solve(lp, opt.lp);
      if (res.status != LpStatus::Optimal)
        throw NumericFailure("slack maximization over the optimal face returned " +
                             std::string(to_string(res.status)));
      S s = slack(base, k, res.primal);
      if constexpr (!T::exact) s -= t_face - t_star;
      implicit[a] = is_zero(s) ? 1 : 0;
      if constexpr (!T::exact) {
        if (!implicit[a]) {
          LinearProgramT<S> lp2 = fine;
          lp2.objective = fine.constraints[k].coeffs;
          auto res2 = solve(lp2, opt.lp);
          if (res2.status != LpStatus::Optimal)
            throw NumericFailure("slack maximization over the optimal face returned " +
                                 std::string(to_string(res2.status)));
          const double s2 = slack(fine, k, res2.primal) - (t_fine - t_star);
          implicit[a] = is_zero(s2) || s2 < 0.1 * s ? 1 : 0;
          if (!implicit[a]) res.primal = std::move(res2.primal);
        }
      }
      maximizers[a] = std::move(res.primal);
    } catch (...) {
      errors[a] = std::current_exception();
    }
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);

  Vec<S> center = vertex;
  for (const auto& c : maximizers)
    for (std::size_t j = 0; j < m; ++j) center[j] += c[j];
  const S weight = S(static_cast<long>(maximizers.size() + 1));
  for (auto& v : center) v /= weight;
  out.relint = to_doubles(center);

  std::vector<std::size_t> implicit_ks, implicit_rows;
  for (std::size_t a = 0; a < active.size(); ++a)
    if (implicit[a]) {
      implicit_ks.push_back(active[a]);
      implicit_rows.push_back(active[a] / 2);
    }
  split_constraints(implicit_ks, out.essential_neg, out.essential_pos);
  std::sort(implicit_rows.begin(), implicit_rows.end());
  fill_dimension(g, implicit_rows, out);
  return out;
}

}  // namespace

FaceAnalysis analyze_optimal_face(const Instance& inst, const SolveOptions& options) {
  return options.arithmetic == Arithmetic::Exact ? analyze<Rational>(inst, options)
                                                 : analyze<double>(inst, options);
}

Solution solve_minimax(const Instance& inst, const SolveOptions& options) {
  std::vector<double> coeffs;
  double lp_t = 0.0;
  if (options.arithmetic == Arithmetic::Exact) {
    const auto g = design_matrix_exact(inst.basis(), inst.domain().points());
    auto [c, t] = solve_vertex(g, values_as<Rational>(inst), options.lp);
    coeffs = to_doubles(c);
    lp_t = to_double(t);
  } else {
    auto [c, t] = solve_vertex(inst.design(), inst.values(), options.lp);
    coeffs = std::move(c);
    lp_t = t;
  }
  Solution s{Polynomial(inst.basis_ptr(), std::move(coeffs)), 0.0, {}, {}, false, false, {}};
  const auto sets = deviation_sets(inst, s.q, options.tolerance.value_or(active_tolerance(lp_t)));
  s.t_star = sets.t;
  s.neg_set = sets.neg;
  s.pos_set = sets.pos;
  s.unbounded = static_cast<std::size_t>(numeric_rank(inst.design())) < inst.dim();
  if (inst.dim() > inst.size())
    s.warnings.push_back("interpolation regime: basis larger than domain, solution set is unbounded");
  return s;
}

Solution relint_solution(const Instance& inst, const SolveOptions& options) {
  FaceAnalysis face = analyze_optimal_face(inst, options);
  Solution s{Polynomial(inst.basis_ptr(), face.relint), 0.0, std::move(face.essential_neg),
             std::move(face.essential_pos), true, face.unbounded, std::move(face.warnings)};
  const auto r = kernels::residuals(inst.design(), s.q.coeffs(), inst.values(), Exec::Parallel);
  s.t_star = kernels::max_abs(r, Exec::Parallel);
  return s;
}

std::pair<IndexSet, IndexSet> essential_sets(const Instance& inst, const SolveOptions& options) {
  FaceAnalysis face = analyze_optimal_face(inst, options);
  return {std::move(face.essential_neg), std::move(face.essential_pos)};
}

namespace {

IndexSet difference(const IndexSet& a, const IndexSet& b) {
  IndexSet out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

}  // namespace

ContainmentReport verify_containment(const Instance& inst, const Polynomial& p,
                                     const SolveOptions& options) {
  const FaceAnalysis face = analyze_optimal_face(inst, options);
  const double tol = options.tolerance.value_or(active_tolerance(face.t_star));
  const DeviationSets sets = deviation_sets(inst, p, tol);
  if (sets.t > face.t_star + tol) throw InputError("containment undefined for suboptimal p");
  ContainmentReport rep;
  rep.missing_neg = difference(face.essential_neg, sets.neg);
  rep.missing_pos = difference(face.essential_pos, sets.pos);
  rep.extra_neg = difference(sets.neg, face.essential_neg);
  rep.extra_pos = difference(sets.pos, face.essential_pos);
  rep.pass = rep.missing_neg.empty() && rep.missing_pos.empty();
  return rep;
}

std::vector<double> face_point(const Instance& inst, double t, const std::vector<double>& objective,
                               const std::vector<double>& center, double radius) {
  const std::size_t m = inst.dim();
  if (objective.size() != m || center.size() != m) throw InputError("face_point: size mismatch");
  LinearProgram lp = face_lp(inst.design(), inst.values(), t);
  for (std::size_t j = 0; j < m; ++j) {
    lp.objective[j] = -objective[j];
    lp.lower[j] = center[j] - radius;
    lp.upper[j] = center[j] + radius;
  }
  auto res = solve_lp(lp);
  if (res.status != LpStatus::Optimal)
    throw NumericFailure("optimal-face probe returned " + std::string(to_string(res.status)));
  return res.primal;
}

}  // namespace multicheb
