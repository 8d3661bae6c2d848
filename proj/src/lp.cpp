#include "multicheb/lp.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "multicheb/errors.hpp"

namespace multicheb {

std::string_view to_string(LpStatus status) {
  switch (status) {
    case LpStatus::Optimal: return "Optimal";
    case LpStatus::Infeasible: return "Infeasible";
    case LpStatus::Unbounded: return "Unbounded";
    case LpStatus::NumericFailure: return "NumericFailure";
  }
  return "?";
}

template <class S>
void LinearProgramT<S>::validate() const {
  const std::size_t n = num_vars();
  if (lower.size() != n || upper.size() != n)
    throw InputError("bound vectors must have one entry per variable");
  for (std::size_t k = 0; k < constraints.size(); ++k) {
    if (constraints[k].coeffs.size() != n)
      throw InputError("constraint " + std::to_string(k) + " has " +
                       std::to_string(constraints[k].coeffs.size()) + " coefficients, expected " +
                       std::to_string(n));
  }
}

namespace {

template <class S>
class RevisedSimplex {
  using T = ScalarTraits<S>;

 public:
  RevisedSimplex(const Matrix<S>& columns, const std::vector<S>& b, const std::vector<S>& c,
                 const LpOptions& opt)
      : m_(b.size()), k_(columns.rows()), cols_(columns), b_(b), c_(c), flip_(m_, 1), opt_(opt) {
    if (columns.cols() != m_) throw InputError("standard form: column length != rhs length");
    if (c.size() != k_) throw InputError("standard form: cost length != column count");
    tol_ = T::exact ? 0.0 : opt.pivot_tol;
    for (std::size_t i = 0; i < m_; ++i) {
      if (T::negative(b_[i], 0.0)) {
        flip_[i] = -1;
        b_[i] = -b_[i];
        for (std::size_t j = 0; j < k_; ++j) cols_(j, i) = -cols_(j, i);
      }
    }
  }

  StandardFormResult<S> run() {
    StandardFormResult<S> out;
    if (m_ == 0) {
      out.x.assign(k_, S(0));
      out.status = LpStatus::Optimal;
      for (std::size_t j = 0; j < k_; ++j)
        if (T::negative(c_[j], tol_)) out.status = LpStatus::Unbounded;
      return out;
    }

    // Phase 1 from the all-artificial basis.
    binv_ = Matrix<S>::identity(m_);
    basis_.resize(m_);
    in_basis_.assign(k_ + m_, 0);
    for (std::size_t i = 0; i < m_; ++i) {
      basis_[i] = k_ + i;
      in_basis_[k_ + i] = 1;
    }
    xb_ = b_;

    std::vector<S> cost1(k_ + m_, S(0));
    for (std::size_t i = 0; i < m_; ++i) cost1[k_ + i] = S(1);
    LpStatus st = iterate(cost1);
    if (st == LpStatus::NumericFailure) return fail(out);
    if (st == LpStatus::Unbounded) return fail(out);  // phase 1 is bounded below by 0

    S infeas(0);
    S scale(1);
    for (std::size_t i = 0; i < m_; ++i) {
      if (basis_[i] >= k_) infeas += xb_[i];
      if (T::abs(b_[i]) > scale) scale = T::abs(b_[i]);
    }
    if (T::positive(infeas, 1e-9 * to_double(scale))) {
      out.status = LpStatus::Infeasible;
      out.pivots = pivots_;
      return out;
    }
    drive_out_artificials();

    std::vector<S> cost2(k_ + m_, S(0));
    for (std::size_t j = 0; j < k_; ++j) cost2[j] = c_[j];
    st = iterate(cost2);
    out.pivots = pivots_;
    if (st != LpStatus::Optimal) {
      out.status = st;
      return out;
    }
    if (!T::exact && !refactor()) return fail(out);

    out.status = LpStatus::Optimal;
    out.x.assign(k_, S(0));
    for (std::size_t i = 0; i < m_; ++i)
      if (basis_[i] < k_) out.x[basis_[i]] = xb_[i];
    out.multipliers = multipliers(cost2);
    for (std::size_t i = 0; i < m_; ++i)
      if (flip_[i] < 0) out.multipliers[i] = -out.multipliers[i];
    out.objective_value = S(0);
    for (std::size_t j = 0; j < k_; ++j) out.objective_value += c_[j] * out.x[j];
    return out;
  }

 private:
  StandardFormResult<S> fail(StandardFormResult<S>& out) {
    out.status = LpStatus::NumericFailure;
    out.pivots = pivots_;
    return out;
  }

  bool is_artificial(std::size_t j) const { return j >= k_; }

  // Binv * A_j
  std::vector<S> ftran(std::size_t j) const {
    std::vector<S> alpha(m_, S(0));
    if (is_artificial(j)) {
      for (std::size_t i = 0; i < m_; ++i) alpha[i] = binv_(i, j - k_);
      return alpha;
    }
    auto col = cols_.row(j);
    for (std::size_t i = 0; i < m_; ++i) {
      S acc(0);
      auto bi = binv_.row(i);
      for (std::size_t r = 0; r < m_; ++r)
        if (!T::zero(col[r], 0.0)) acc += bi[r] * col[r];
      alpha[i] = acc;
    }
    return alpha;
  }

  // w = c_B^T Binv
  std::vector<S> multipliers(const std::vector<S>& cost) const {
    std::vector<S> w(m_, S(0));
    for (std::size_t i = 0; i < m_; ++i) {
      const S& cb = cost[basis_[i]];
      if (T::zero(cb, 0.0)) continue;
      auto bi = binv_.row(i);
      for (std::size_t r = 0; r < m_; ++r) w[r] += cb * bi[r];
    }
    return w;
  }

  S reduced_cost(std::size_t j, const std::vector<S>& cost, const std::vector<S>& w) const {
    auto col = cols_.row(j);
    S d = cost[j];
    for (std::size_t r = 0; r < m_; ++r)
      if (!T::zero(col[r], 0.0)) d -= w[r] * col[r];
    return d;
  }

  void pivot(std::size_t r, std::size_t j, const std::vector<S>& alpha) {
    const S inv = S(1) / alpha[r];
    auto pr = binv_.row(r);
    for (auto& v : pr) v *= inv;
    xb_[r] *= inv;
    for (std::size_t i = 0; i < m_; ++i) {
      if (i == r || T::zero(alpha[i], 0.0)) continue;
      const S f = alpha[i];
      auto pi = binv_.row(i);
      for (std::size_t q = 0; q < m_; ++q) pi[q] -= f * pr[q];
      xb_[i] -= f * xb_[r];
      if constexpr (!T::exact) {
        if (xb_[i] < 0.0 && xb_[i] > -1e-11) xb_[i] = 0.0;
      }
    }
    in_basis_[basis_[r]] = 0;
    basis_[r] = j;
    in_basis_[j] = 1;
    ++pivots_;
    if constexpr (!T::exact) {
      if (++since_refactor_ >= opt_.refactor_every) refactor_ok_ = refactor();
    }
  }

  // Recompute Binv and x_B from scratch (float mode drift control).
  bool refactor() {
    since_refactor_ = 0;
    Matrix<S> bmat(m_, m_);
    for (std::size_t i = 0; i < m_; ++i) {
      const std::size_t j = basis_[i];
      for (std::size_t r = 0; r < m_; ++r)
        bmat(r, i) = is_artificial(j) ? S(r == j - k_ ? 1 : 0) : cols_(j, r);
    }
    Matrix<S> inv = Matrix<S>::identity(m_);
    for (std::size_t c = 0; c < m_; ++c) {
      std::size_t p = c;
      for (std::size_t r = c + 1; r < m_; ++r)
        if (T::abs(bmat(r, c)) > T::abs(bmat(p, c))) p = r;
      if (T::zero(bmat(p, c), 1e-13)) return false;
      if (p != c)
        for (std::size_t q = 0; q < m_; ++q) {
          std::swap(bmat(p, q), bmat(c, q));
          std::swap(inv(p, q), inv(c, q));
        }
      const S d = S(1) / bmat(c, c);
      for (std::size_t q = 0; q < m_; ++q) {
        bmat(c, q) *= d;
        inv(c, q) *= d;
      }
      for (std::size_t r = 0; r < m_; ++r) {
        if (r == c || T::zero(bmat(r, c), 0.0)) continue;
        const S f = bmat(r, c);
        for (std::size_t q = 0; q < m_; ++q) {
          bmat(r, q) -= f * bmat(c, q);
          inv(r, q) -= f * inv(c, q);
        }
      }
    }
    binv_ = std::move(inv);
    for (std::size_t i = 0; i < m_; ++i) {
      S acc(0);
      for (std::size_t r = 0; r < m_; ++r) acc += binv_(i, r) * b_[r];
      if constexpr (!T::exact) {
        if (acc < 0.0 && acc > -1e-9) acc = 0.0;
      }
      xb_[i] = acc;
    }
    return true;
  }

  bool ratio_less(const S& a, const S& b) const {
    if constexpr (T::exact) {
      return a < b;
    } else {
      return a < b - 1e-12 * (1.0 + std::abs(b));
    }
  }
  bool ratio_equal(const S& a, const S& b) const {
    if constexpr (T::exact) {
      return a == b;
    } else {
      return std::abs(a - b) <= 1e-12 * (1.0 + std::abs(b));
    }
  }

  // Bland's rule primal simplex over the real columns.
  LpStatus iterate(const std::vector<S>& cost) {
    for (;;) {
      if (!refactor_ok_) return LpStatus::NumericFailure;
      if (pivots_ >= opt_.max_pivots) return LpStatus::NumericFailure;
      const std::vector<S> w = multipliers(cost);
      std::size_t entering = k_;
      for (std::size_t j = 0; j < k_; ++j) {
        if (in_basis_[j]) continue;
        if (T::negative(reduced_cost(j, cost, w), tol_)) {
          entering = j;
          break;
        }
      }
      if (entering == k_) return LpStatus::Optimal;

      const std::vector<S> alpha = ftran(entering);
      std::size_t leave = m_;
      S best(0);
      for (std::size_t i = 0; i < m_; ++i) {
        if (!T::positive(alpha[i], tol_)) continue;
        const S ratio = xb_[i] / alpha[i];
        if (leave == m_ || ratio_less(ratio, best) ||
            (ratio_equal(ratio, best) && basis_[i] < basis_[leave])) {
          leave = i;
          best = ratio;
        }
      }
      if (leave == m_) return LpStatus::Unbounded;
      pivot(leave, entering, alpha);
    }
  }

  void drive_out_artificials() {
    for (std::size_t r = 0; r < m_; ++r) {
      if (!is_artificial(basis_[r])) continue;
      if constexpr (!T::exact) xb_[r] = 0.0;
      auto br = binv_.row(r);
      for (std::size_t j = 0; j < k_; ++j) {
        if (in_basis_[j]) continue;
        auto col = cols_.row(j);
        S rho(0);
        for (std::size_t q = 0; q < m_; ++q) rho += br[q] * col[q];
        if (!T::zero(rho, tol_)) {
          pivot(r, j, ftran(j));
          break;
        }
      }
      // Rows left with an artificial are redundant; it stays basic at zero.
    }
  }

  std::size_t m_, k_;
  Matrix<S> cols_;
  std::vector<S> b_, c_;
  std::vector<int> flip_;
  LpOptions opt_;
  double tol_ = 0.0;

  Matrix<S> binv_;
  std::vector<std::size_t> basis_;
  std::vector<char> in_basis_;
  std::vector<S> xb_;
  std::size_t pivots_ = 0;
  std::size_t since_refactor_ = 0;
  bool refactor_ok_ = true;
};

}  // namespace

template <class S>
StandardFormResult<S> solve_standard_form(const Matrix<S>& columns, const std::vector<S>& b,
                                          const std::vector<S>& c, const LpOptions& options) {
  return RevisedSimplex<S>(columns, b, c, options).run();
}

template <class S>
LpResultT<S> solve(const LinearProgramT<S>& lp, const LpOptions& options) {
  lp.validate();
  const std::size_t n = lp.num_vars();

  enum class Kind { Constraint, Lower, Upper };
  struct CanonRow {
    Kind kind;
    std::size_t index;
    int sign;  // +1: row is a_k.x <= b_k;  -1: row is -a_k.x <= -b_k
  };
  std::vector<CanonRow> meta;
  std::vector<std::vector<S>> rows;
  std::vector<S> rhs;

  auto push = [&](Kind kind, std::size_t index, int sign, const std::vector<S>& a, const S& b) {
    std::vector<S> row(n);
    for (std::size_t j = 0; j < n; ++j) row[j] = sign > 0 ? a[j] : S(-a[j]);
    rows.push_back(std::move(row));
    rhs.push_back(sign > 0 ? b : S(-b));
    meta.push_back({kind, index, sign});
  };

  for (std::size_t k = 0; k < lp.constraints.size(); ++k) {
    const auto& con = lp.constraints[k];
    if (con.relation != Relation::GreaterEqual) push(Kind::Constraint, k, +1, con.coeffs, con.rhs);
    if (con.relation != Relation::LessEqual) push(Kind::Constraint, k, -1, con.coeffs, con.rhs);
  }
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<S> e(n, S(0));
    e[j] = S(1);
    if (lp.lower[j]) push(Kind::Lower, j, -1, e, *lp.lower[j]);
    if (lp.upper[j]) push(Kind::Upper, j, +1, e, *lp.upper[j]);
  }

  Matrix<S> columns = Matrix<S>::from_rows(rows, n);
  std::vector<S> dual_rhs(n);
  for (std::size_t j = 0; j < n; ++j) dual_rhs[j] = -lp.objective[j];

  LpResultT<S> out;
  const auto d = solve_standard_form(columns, dual_rhs, rhs, options);
  out.pivots = d.pivots;

  switch (d.status) {
    case LpStatus::Optimal: {
      out.status = LpStatus::Optimal;
      out.primal = d.multipliers;
      out.objective_value = S(0);
      for (std::size_t j = 0; j < n; ++j) out.objective_value += lp.objective[j] * out.primal[j];
      out.dual.assign(lp.constraints.size(), S(0));
      out.lower_dual.assign(n, S(0));
      out.upper_dual.assign(n, S(0));
      for (std::size_t i = 0; i < meta.size(); ++i) {
        const S& y = d.x[i];
        switch (meta[i].kind) {
          case Kind::Constraint:
            if (meta[i].sign > 0) out.dual[meta[i].index] -= y;
            else out.dual[meta[i].index] += y;
            break;
          case Kind::Lower: out.lower_dual[meta[i].index] += y; break;
          case Kind::Upper: out.upper_dual[meta[i].index] += y; break;
        }
      }
      return out;
    }
    case LpStatus::Unbounded:
      out.status = LpStatus::Infeasible;
      return out;
    case LpStatus::NumericFailure:
      out.status = LpStatus::NumericFailure;
      return out;
    case LpStatus::Infeasible: {
      // Dual infeasible: the primal is infeasible or unbounded. The dual of the
      // pure feasibility problem (zero objective) is always feasible at y = 0
      // and is unbounded exactly when the primal constraints are inconsistent.
      const auto f = solve_standard_form(columns, std::vector<S>(n, S(0)), rhs, options);
      out.pivots += f.pivots;
      if (f.status == LpStatus::Unbounded) out.status = LpStatus::Infeasible;
      else if (f.status == LpStatus::Optimal) out.status = LpStatus::Unbounded;
      else out.status = LpStatus::NumericFailure;
      return out;
    }
  }
  return out;
}

LpResult solve_lp(const LinearProgram& lp, const LpOptions& options) { return solve(lp, options); }

ExactLpResult solve_lp_exact(const ExactLinearProgram& lp, const LpOptions& options) {
  return solve(lp, options);
}

ExactLinearProgram to_exact(const LinearProgram& lp) {
  ExactLinearProgram out(lp.num_vars());
  for (std::size_t j = 0; j < lp.num_vars(); ++j) {
    out.objective[j] = to_rational(lp.objective[j]);
    if (lp.lower[j]) out.lower[j] = to_rational(*lp.lower[j]);
    if (lp.upper[j]) out.upper[j] = to_rational(*lp.upper[j]);
  }
  for (const auto& con : lp.constraints) {
    std::vector<Rational> a(con.coeffs.size());
    for (std::size_t j = 0; j < a.size(); ++j) a[j] = to_rational(con.coeffs[j]);
    out.add(std::move(a), con.relation, to_rational(con.rhs));
  }
  return out;
}

template struct LinearProgramT<double>;
template struct LinearProgramT<Rational>;
template LpResultT<double> solve(const LinearProgramT<double>&, const LpOptions&);
template LpResultT<Rational> solve(const LinearProgramT<Rational>&, const LpOptions&);
template StandardFormResult<double> solve_standard_form(const Matrix<double>&,
                                                        const std::vector<double>&,
                                                        const std::vector<double>&,
                                                        const LpOptions&);
template StandardFormResult<Rational> solve_standard_form(const Matrix<Rational>&,
                                                          const std::vector<Rational>&,
                                                          const std::vector<Rational>&,
                                                          const LpOptions&);

}  // namespace multicheb
