#include "multicheb/examples.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <sstream>

#include "multicheb/construct.hpp"
#include "multicheb/errors.hpp"
#include "multicheb/funcexpr.hpp"
#include "multicheb/kernels.hpp"

namespace multicheb {

namespace {

const std::vector<std::string> kIds = {"disk-sextic-deg2", "square-f-linear", "square-h-linear",
                                       "square-g-linear",  "bump-sharp-hex",  "bump-smooth-hex"};

const char* kSextic = "x^6+y^6+3*x^4*y^2+3*x^2*y^4+6*x*y^2-2*x^3";
const char* kSquareF = "(x^2-1/2)*(1-y^2)";
const char* kSquareH = "(x^2-1/2)*(1-abs(y))";
const char* kSquareG = "(min(abs(2*x),2-abs(2*x))-1/2)*(1-y^2)";

// Coefficients over {1, x, y, x^2, xy, y^2}.
const std::vector<double> kCircle = {-1, 0, 0, 1, 0, 1};

void check_resolution(double h) {
  if (!(h >= kMinResolution && h <= kMaxResolution)) {
    std::ostringstream os;
    os << "resolution " << h << " outside [" << kMinResolution << ", " << kMaxResolution << "]";
    throw InputError(os.str());
  }
}

std::size_t rings_for(double radius, double h) {
  return std::max<std::size_t>(1, static_cast<std::size_t>(std::lround(radius / h)));
}

// Roughly square cells near the unit circle, and every pi/3 angle present.
std::size_t per_ring_for(std::size_t rings) { return (3 * rings + 5) / 6 * 6; }

std::vector<double> sample_expr(const char* text, const Domain& d) {
  const Expr e = parse_expr(text);
  return kernels::sample([&](std::span<const double> x) { return eval_expr(e, x); }, d.points(),
                         Exec::Parallel);
}

const std::vector<std::string> kHexLabels = {"z0", "z1", "z2", "z3", "z4", "z5", "z6"};

PaperInstance disk_sextic(double h) {
  const std::size_t rings = rings_for(1.0, h);
  Domain d = with_points(disk_grid({0, 0}, 1.0, rings, per_ring_for(rings)), hexagon_points(), kHexLabels);
  auto values = sample_expr(kSextic, d);
  PaperInstance p{"disk-sextic-deg2",
                  "sextic on the unit disk, quadratic approximation (non-unique optimum)",
                  kSextic, h,
                  Instance(std::move(d), std::move(values), enumerate_degree_basis(2, 2)),
                  {}};
  p.expected.t_star = 2.0;
  p.expected.essential_neg = {"z1", "z3", "z5"};
  p.expected.essential_pos = {"z2", "z4", "z6"};
  p.expected.optima = {{"q0", {1, 0, 0, 0, 0, 0}}, {"q1", {-2, 0, 0, 3, 0, 3}}};
  p.expected.dim_q = p.expected.dim_s = 1;
  p.expected.direction = kCircle;
  p.expected.base = {1, 0, 0, 0, 0, 0};
  p.expected.citation = "nonunique quadratic approximation on the disk, with appendix deviation values";
  return p;
}

const std::vector<Point> kSquarePoints = {{0, 0},   {1, 0},  {-1, 0}, {0.5, 0}, {-0.5, 0}, {1, 1},
                                          {-1, 1},  {1, -1}, {-1, -1}, {0, 1},  {0, -1}};
const std::vector<std::string> kSquareLabels = {"origin", "east", "west",  "half-east",
                                                "half-west", "ne", "nw",   "se",
                                                "sw",     "north", "south"};

PaperInstance square(const std::string& id, const char* fn, double h) {
  const auto per_axis = static_cast<std::size_t>(std::lround(2.0 / h)) + 1;
  Domain d = with_points(box_grid({-1, -1}, {1, 1}, per_axis), kSquarePoints, kSquareLabels);
  auto values = sample_expr(fn, d);
  PaperInstance p{id, "", fn, h,
                  Instance(std::move(d), std::move(values), enumerate_degree_basis(2, 1)), {}};
  p.expected.t_star = 0.5;
  p.expected.optima = {{"q0", {0, 0, 0}}};
  p.expected.dim_q = p.expected.dim_s = 1;
  p.expected.direction = std::vector<double>{0, 0, 1};
  p.expected.base = {0, 0, 0};
  if (id == "square-g-linear") {
    p.description = "nonsmooth g on the square, linear approximation";
    p.expected.essential_neg = {"origin", "east", "west"};
    p.expected.essential_pos = {"half-east", "half-west"};
    p.expected.citation = "g on the square: q = 0 unique on the continuum";
  } else {
    p.expected.essential_neg = {"origin"};
    p.expected.essential_pos = {"east", "west"};
    if (id == "square-h-linear") {
      p.description = "h = (x^2-1/2)(1-|y|) on the square, linear approximation";
      p.expected.optima.push_back({"q+1/2", {0, 0, 0.5}});
      p.expected.optima.push_back({"q-1/2", {0, 0, -0.5}});
      p.expected.citation = "h on the square: alpha*y optimal for alpha in [-1/2, 1/2]";
    } else {
      p.description = "f = (x^2-1/2)(1-y^2) on the square, linear approximation";
      p.expected.citation = "f on the square: q = 0 unique on the continuum, d(+-1,-a) = 1/2 + a^2/2";
    }
  }
  return p;
}

PaperInstance bump_hex(const std::string& id, BumpVariant variant, double h) {
  const auto z = hexagon_points();
  BumpSpec spec = BumpSpec::make({z[1], z[3], z[5]}, {z[2], z[4], z[6]}, variant);
  const std::size_t rings = rings_for(2.0, h);
  Domain d = with_points(disk_grid({0, 0}, 2.0, rings, per_ring_for(rings)), z, kHexLabels);
  BumpInstance bi = bump_instance(spec, d, enumerate_degree_basis(2, 2));
  // bump_instance adds N1.., P1.. labels only where the grid had none; the
  // z-labels were attached first.
  const bool sharp = variant == BumpVariant::Sharp;
  PaperInstance p{id,
                  sharp ? "cone bumps at the hexagon, radius-2 disk (dim Q = dim S)"
                        : "paraboloid bumps at the hexagon, radius-2 disk (face shrinks with h)",
                  sharp ? "min(2*norm(x-z1),2*norm(x-z3),2*norm(x-z5),1)-min(2*norm(x-z2),2*norm(x-z4),2*norm(x-z6),1)"
                        : "min(4*norm(x-z1)^2,4*norm(x-z3)^2,4*norm(x-z5)^2,1)-min(4*norm(x-z2)^2,4*norm(x-z4)^2,4*norm(x-z6)^2,1)",
                  h, std::move(bi.instance), {}};
  p.expected.t_star = 1.0;
  p.expected.essential_neg = {"z1", "z3", "z5"};
  p.expected.essential_pos = {"z2", "z4", "z6"};
  p.expected.optima = {{"zero", std::vector<double>(6, 0.0)}};
  p.expected.dim_q = p.expected.dim_s = 1;
  p.expected.direction = kCircle;
  p.expected.base = std::vector<double>(6, 0.0);
  p.expected.citation = sharp ? "sharp bumps: alpha (x^2+y^2-1) optimal for small alpha"
                              : "smooth bumps: q = 0 unique on the continuous disk";
  return p;
}

}  // namespace

std::vector<std::string> instance_ids() { return kIds; }

std::vector<Point> hexagon_points() {
  const double s = std::numbers::sqrt3 / 2.0;
  return {{0, 0}, {1, 0}, {0.5, s}, {-0.5, s}, {-1, 0}, {-0.5, -s}, {0.5, -s}};
}

PaperInstance get_instance(const std::string& id, double resolution) {
  if (std::find(kIds.begin(), kIds.end(), id) == kIds.end()) {
    std::string known;
    for (const auto& k : kIds) known += (known.empty() ? "" : ", ") + k;
    throw InputError("unknown instance '" + id + "'; known ids: " + known);
  }
  check_resolution(resolution);
  if (id == "disk-sextic-deg2") return disk_sextic(resolution);
  if (id == "square-f-linear") return square(id, kSquareF, resolution);
  if (id == "square-h-linear") return square(id, kSquareH, resolution);
  if (id == "square-g-linear") return square(id, kSquareG, resolution);
  if (id == "bump-sharp-hex") return bump_hex(id, BumpVariant::Sharp, resolution);
  return bump_hex(id, BumpVariant::Smooth, resolution);
}

namespace {

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(12);
  os << x;
  return os.str();
}

IndexSet indices_of(const Domain& d, const std::vector<std::string>& labels) {
  IndexSet out;
  for (const auto& l : labels) {
    auto i = d.find_label(l);
    if (!i) throw NumericFailure("registry point '" + l + "' missing from the domain");
    out.push_back(*i);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::string describe(const Domain& d, const IndexSet& s) {
  std::string out = "{";
  for (std::size_t k = 0; k < s.size(); ++k) {
    if (k) out += ", ";
    const auto& l = d.label(s[k]);
    if (!l.empty()) {
      out += l;
    } else {
      out += "(";
      for (std::size_t j = 0; j < d.n(); ++j) out += (j ? "," : "") + fmt(d.point(s[k])[j]);
      out += ")";
    }
  }
  return out + "}";
}

struct Checker {
  InstanceReport& rep;
  void add(std::string name, bool pass, std::string detail) {
    rep.checks.push_back({std::move(name), pass, std::move(detail)});
  }
  void guarded(const std::string& name, const std::function<void()>& body) {
    try {
      body();
    } catch (const std::exception& e) {
      add(name, false, e.what());
    }
  }
};

double deviation_at(const Instance& inst, const std::vector<double>& c, std::size_t i) {
  double q = 0.0;
  for (std::size_t j = 0; j < c.size(); ++j) q += inst.design()(i, j) * c[j];
  return inst.values()[i] - q;
}

void disk_checks(const PaperInstance& p, Checker& ck) {
  const Instance& inst = p.instance;
  const Domain& d = inst.domain();
  std::vector<std::size_t> zi;
  for (const auto& l : kHexLabels) zi.push_back(indices_of(d, {l}).front());
  double worst = 0.0, worst_origin = 0.0;
  for (double a : {0.0, 0.25, 0.5, 1.0}) {
    std::vector<double> qa = {1 - 3 * a, 0, 0, 3 * a, 0, 3 * a};
    for (int k = 1; k <= 6; ++k) {
      const double want = k % 2 == 1 ? -2.0 : 2.0;
      worst = std::max(worst, std::abs(deviation_at(inst, qa, zi[k]) - want));
    }
    worst_origin = std::max(worst_origin, std::abs(deviation_at(inst, qa, zi[0]) - (-1 + 3 * a)));
  }
  ck.add("deviation -2 at z1,z3,z5 and +2 at z2,z4,z6 for alpha in {0,1/4,1/2,1}", worst <= 1e-9,
         "max error " + fmt(worst));
  ck.add("deviation at the origin equals -1+3 alpha", worst_origin <= 1e-9,
         "max error " + fmt(worst_origin));
  ck.guarded("q1 attains the extra point z0", [&] {
    const auto rep = verify_containment(inst, Polynomial(inst.basis_ptr(), p.expected.optima[1].coeffs));
    const IndexSet extra = [&] {
      IndexSet e = rep.extra_neg;
      e.insert(e.end(), rep.extra_pos.begin(), rep.extra_pos.end());
      std::sort(e.begin(), e.end());
      return e;
    }();
    const bool ok = rep.pass && extra == IndexSet{zi[0]} && rep.extra_pos == IndexSet{zi[0]};
    ck.add("q1 attains the extra point z0", ok,
           "extra N " + describe(d, rep.extra_neg) + ", extra P " + describe(d, rep.extra_pos));
  });
}

void edge_checks(const PaperInstance& p, Checker& ck) {
  const Instance& inst = p.instance;
  const Domain& d = inst.domain();
  for (double sign : {1.0, -1.0}) {
    const std::vector<double> q = {0, 0, 0.5 * sign};
    double worst = 0.0;
    std::size_t rows = 0;
    for (std::size_t i = 0; i < d.size(); ++i) {
      const auto& x = d.point(i);
      const bool on_half_edge = std::abs(std::abs(x[0]) - 1.0) <= 1e-12 && sign * x[1] <= 1e-12;
      if (!on_half_edge) continue;
      ++rows;
      worst = std::max(worst, std::abs(deviation_at(inst, q, i) - 0.5));
    }
    ck.add(sign > 0 ? "q = y/2 deviates by 1/2 on x=+-1, y<=0" : "q = -y/2 deviates by 1/2 on x=+-1, y>=0",
           rows > 0 && worst <= 1e-12, std::to_string(rows) + " edge points, max error " + fmt(worst));
  }
  const auto range = optimal_alpha_range(inst, {0, 0, 0}, {0, 0, 1}, 0.5);
  ck.add("alpha range along y is [-1/2, 1/2]",
         std::abs(range.lo + 0.5) <= 1e-5 && std::abs(range.hi - 0.5) <= 1e-5,
         "[" + fmt(range.lo) + ", " + fmt(range.hi) + "]");
}

void bump_checks(const PaperInstance& p, Checker& ck) {
  const Instance& inst = p.instance;
  double worst = 0.0;
  for (const auto& l : p.expected.essential_neg)
    worst = std::max(worst, std::abs(inst.values()[*inst.domain().find_label(l)] + 1.0));
  for (const auto& l : p.expected.essential_pos)
    worst = std::max(worst, std::abs(inst.values()[*inst.domain().find_label(l)] - 1.0));
  ck.add("bump equals -1 on N and +1 on P", worst <= 1e-12, "max error " + fmt(worst));
}

}  // namespace

InstanceReport run_instance(const std::string& id, double resolution, const SolveOptions& options) {
  InstanceReport rep;
  rep.id = id;
  rep.resolution = resolution;
  std::optional<PaperInstance> p;
  try {
    p = get_instance(id, resolution);
  } catch (const std::exception& e) {
    rep.error = e.what();
    return rep;
  }
  const Instance& inst = p->instance;
  const Domain& d = inst.domain();
  rep.points = inst.size();
  Checker ck{rep};

  ck.guarded("solve", [&] {
    const Solution s = solve_minimax(inst, options);
    rep.t_star = s.t_star;
    ck.add("t* = " + fmt(p->expected.t_star), std::abs(s.t_star - p->expected.t_star) <= 1e-8,
           "t* = " + fmt(s.t_star));
    const auto cert = is_optimal(inst, s.q);
    ck.add("solver output certified optimal", cert.verdict == Verdict::OptimalCertified,
           std::string(to_string(cert.verdict)));
  });

  for (const auto& opt : p->expected.optima)
    ck.guarded("optimum " + opt.name, [&] {
      const Polynomial q(inst.basis_ptr(), opt.coeffs);
      const auto cert = is_optimal(inst, q);
      ck.add(opt.name + " certified optimal",
             cert.verdict == Verdict::OptimalCertified &&
                 std::abs(cert.t - p->expected.t_star) <= 1e-9,
             std::string(to_string(cert.verdict)) + ", max deviation " + fmt(cert.t));
      const auto cont = verify_containment(inst, q, options);
      ck.add(opt.name + " contains the essential sets", cont.pass,
             "missing N " + describe(d, cont.missing_neg) + ", missing P " + describe(d, cont.missing_pos));
    });

  ck.guarded("dimensions", [&] {
    const DimensionReport dr = solution_vs_cone_dimension(inst, options);
    rep.dim_q = dr.dim_q;
    rep.dim_s = dr.dim_s;
    const IndexSet want_n = indices_of(d, p->expected.essential_neg);
    const IndexSet want_p = indices_of(d, p->expected.essential_pos);
    ck.add("essential N = " + describe(d, want_n), dr.essential_neg == want_n, describe(d, dr.essential_neg));
    ck.add("essential P = " + describe(d, want_p), dr.essential_pos == want_p, describe(d, dr.essential_pos));
    ck.add("dim Q = dim S = " + std::to_string(p->expected.dim_q),
           dr.dim_q == p->expected.dim_q && dr.dim_s == p->expected.dim_s,
           "dim Q = " + std::to_string(dr.dim_q) + ", dim S = " + std::to_string(dr.dim_s));
    if (p->expected.direction && dr.q_directions.size() == 1) {
      const double a = angle_to_line(dr.q_directions[0], *p->expected.direction);
      ck.add("solution direction along the expected polynomial", a <= 1e-6, "angle " + fmt(a));
    }
  });

  ck.guarded("instance checks", [&] {
    if (id == "disk-sextic-deg2") disk_checks(*p, ck);
    if (id == "square-h-linear") edge_checks(*p, ck);
    if (id.rfind("bump-", 0) == 0) bump_checks(*p, ck);
  });

  rep.pass = rep.error.empty() &&
             std::all_of(rep.checks.begin(), rep.checks.end(), [](const Check& c) { return c.pass; });
  return rep;
}

RunReport run_all(double resolution, const SolveOptions& options) {
  RunReport out;
  out.resolution = resolution;
  for (const auto& id : kIds) out.instances.push_back(run_instance(id, resolution, options));
  out.pass = std::all_of(out.instances.begin(), out.instances.end(),
                         [](const InstanceReport& r) { return r.pass; });
  return out;
}

std::vector<RefinementRow> refinement_study(const std::string& id, const std::vector<double>& spacings) {
  std::vector<RefinementRow> rows;
  for (double h : spacings) {
    const PaperInstance p = get_instance(id, h);
    const DimensionReport dr = solution_vs_cone_dimension(p.instance);
    if (dr.s_rays.empty()) throw NumericFailure("refinement study: separating cone is trivial for " + id);
    RefinementRow row;
    row.id = id;
    row.spacing = h;
    row.points = p.instance.size();
    row.t_star = dr.t_star;
    row.dim_q = dr.dim_q;
    row.dim_s = dr.dim_s;
    row.ray = normalize_direction(dr.s_rays.front());
    row.alpha_max = optimal_alpha_range(p.instance, p.expected.base, row.ray, dr.t_star).max_abs();
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace multicheb
