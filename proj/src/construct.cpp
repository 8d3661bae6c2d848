#include "multicheb/construct.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "multicheb/certify.hpp"
#include "multicheb/errors.hpp"
#include "multicheb/kernels.hpp"

namespace multicheb {

std::string_view to_string(BumpVariant v) { return v == BumpVariant::Sharp ? "sharp" : "smooth"; }

BumpVariant parse_bump_variant(std::string_view s) {
  if (s == "sharp") return BumpVariant::Sharp;
  if (s == "smooth") return BumpVariant::Smooth;
  throw InputError("unknown bump variant '" + std::string(s) + "' (expected sharp or smooth)");
}

namespace {

double euclid(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) s += (a[k] - b[k]) * (a[k] - b[k]);
  return std::sqrt(s);
}

}  // namespace

double min_distance(const std::vector<Point>& a, const std::vector<Point>& b) {
  double d = std::numeric_limits<double>::infinity();
  for (const auto& u : a)
    for (const auto& v : b) d = std::min(d, euclid(u, v));
  return d;
}

BumpSpec BumpSpec::make(std::vector<Point> neg, std::vector<Point> pos, BumpVariant variant) {
  if (neg.empty() || pos.empty()) throw InputError("N and P must both be nonempty");
  const std::size_t n = neg.front().size();
  if (n == 0) throw InputError("points must have positive dimension");
  for (const auto* set : {&neg, &pos})
    for (const auto& p : *set) {
      if (p.size() != n) throw InputError("N and P points differ in dimension");
      for (double c : p)
        if (!std::isfinite(c)) throw InputError("bump point is not finite");
    }
  BumpSpec s;
  s.d = min_distance(neg, pos);
  if (!(s.d > kDedupTolerance)) throw InputError("N and P overlap");
  s.neg = std::move(neg);
  s.pos = std::move(pos);
  s.variant = variant;
  return s;
}

double Bump::profile(double dist) const {
  const double r = 2.0 / spec_.d * dist;
  if (spec_.variant == BumpVariant::Sharp) return std::max(1.0 - r, 0.0);
  return std::max(1.0 - r * r, 0.0);
}

double Bump::operator()(std::span<const double> x) const {
  if (x.size() != spec_.neg.front().size()) throw InputError("bump evaluated at a point of wrong dimension");
  double up = 0.0, down = 0.0;
  for (const auto& u : spec_.pos) up = std::max(up, profile(euclid(x, u)));
  for (const auto& v : spec_.neg) down = std::max(down, profile(euclid(x, v)));
  return up - down;
}

Bump make_bump(std::vector<Point> neg, std::vector<Point> pos, BumpVariant variant) {
  return Bump(BumpSpec::make(std::move(neg), std::move(pos), variant));
}

BumpInstance bump_instance(const BumpSpec& spec, const Domain& domain, const BasisPtr& basis) {
  if (domain.n() != spec.neg.front().size())
    throw InputError("bump points and domain differ in dimension");
  std::vector<Point> extra;
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < spec.neg.size(); ++i) {
    extra.push_back(spec.neg[i]);
    labels.push_back("N" + std::to_string(i + 1));
  }
  for (std::size_t i = 0; i < spec.pos.size(); ++i) {
    extra.push_back(spec.pos[i]);
    labels.push_back("P" + std::to_string(i + 1));
  }
  Domain x = with_points(domain, extra, labels);
  const Bump bump(spec);
  auto values = kernels::sample([&](std::span<const double> p) { return bump(p); }, x.points(),
                                Exec::Parallel);
  BumpInstance out{Instance(std::move(x), std::move(values), basis), spec, {}};
  if (strict_separator(spec.neg, spec.pos, basis).separator)
    out.warnings.push_back(
        "N and P are strictly separable in the basis: zero polynomial will not be optimal");
  return out;
}

AlphaRange optimal_alpha_range(const Instance& inst, const std::vector<double>& base,
                               const std::vector<double>& direction, double t_star,
                               double resolution) {
  if (base.size() != inst.dim() || direction.size() != inst.dim())
    throw InputError("alpha range: coefficient vectors do not match the basis");
  if (!(resolution > 0.0)) throw InputError("alpha range: resolution must be positive");
  const auto r0 = kernels::residuals(inst.design(), base, inst.values(), Exec::Parallel);
  const auto gd = kernels::residuals(inst.design(), direction, std::vector<double>(inst.size(), 0.0),
                                     Exec::Parallel);  // = -G d
  const double limit = t_star + 1e-9 * (1.0 + t_star);
  // residual of base + a d is r0 - G d a = r0 + gd a
  auto feasible = [&](double a) {
    double m = 0.0;
    for (std::size_t i = 0; i < r0.size(); ++i) m = std::max(m, std::abs(r0[i] + gd[i] * a));
    return m <= limit;
  };
  auto reach = [&](double sign, bool& unbounded) {
    constexpr double kCap = 1e6;
    double good = 0.0, bad = 1.0;
    while (feasible(sign * bad)) {
      good = bad;
      bad *= 2.0;
      if (bad > kCap) {
        unbounded = true;
        return good;
      }
    }
    while (bad - good > resolution) {
      const double mid = 0.5 * (good + bad);
      (feasible(sign * mid) ? good : bad) = mid;
    }
    return good;
  };
  AlphaRange out;
  out.hi = reach(1.0, out.unbounded_hi);
  out.lo = -reach(-1.0, out.unbounded_lo);
  return out;
}

}  // namespace multicheb
