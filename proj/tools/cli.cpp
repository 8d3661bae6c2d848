#include "cli.hpp"

#include <algorithm>
#include <fstream>
#include <optional>
#include <regex>
#include <sstream>

#include "CLI11.hpp"
#include "multicheb/certify.hpp"
#include "multicheb/construct.hpp"
#include "multicheb/errors.hpp"
#include "multicheb/examples.hpp"
#include "multicheb/funcexpr.hpp"
#include "multicheb/io.hpp"
#include "multicheb/kernels.hpp"

namespace multicheb {

namespace {

struct Config {
  std::string function, samples, builtin, instance;
  std::optional<int> degree;
  std::string domain;
  std::optional<double> tolerance;
  bool exact = false;
  bool relint = false;
  std::string output;
  std::string format;
  double resolution = kDefaultResolution;
  std::string resolution_text;
  std::string candidate;
  std::string neg_file, pos_file, spec, variant = "sharp", samples_output;
  std::string id;
  bool all = false;
  std::string points_output;
  std::size_t max_pivots = LpOptions{}.max_pivots;
};

SolveOptions solve_options(const Config& c) {
  SolveOptions o;
  o.arithmetic = c.exact ? Arithmetic::Exact : Arithmetic::Float;
  o.tolerance = c.tolerance;
  o.lp.max_pivots = c.max_pivots;
  return o;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

Json parse_json(const std::string& text, const std::string& what) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError(what + ": " + e.what());
  }
}

void emit(const Config& c, const std::string& text, std::ostream& out) {
  if (c.output.empty()) {
    out << text;
    return;
  }
  std::ofstream f(c.output);
  if (!f) throw InputError("cannot write '" + c.output + "'");
  f << text;
}

double parse_real(const std::string& s, const std::string& what) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != s.size()) throw InputError("bad number '" + s + "' in " + what);
  return v;
}

std::size_t parse_count(const std::string& s, const std::string& what) {
  const double v = parse_real(s, what);
  if (v < 0 || v != std::floor(v)) throw InputError("expected a nonnegative integer, got '" + s + "' in " + what);
  return static_cast<std::size_t>(v);
}

// grid:[lo,hi]x[lo,hi]:k | disk:(cx,cy):r:rings:perring | circle:(cx,cy):r:count | file
Domain parse_domain(const std::string& spec) {
  if (spec.empty()) throw InputError("--domain is required");
  if (spec.rfind("grid:", 0) == 0) {
    static const std::regex whole(R"(grid:((?:\[[^\]]*\])(?:x\[[^\]]*\])*):(\d+))");
    static const std::regex interval(R"(\[\s*([^,\]]+)\s*,\s*([^\]]+)\s*\])");
    std::smatch m;
    if (!std::regex_match(spec, m, whole)) throw InputError("bad grid spec '" + spec + "', expected grid:[lo,hi]x...:k");
    Point lo, hi;
    const std::string body = m[1];
    for (auto it = std::sregex_iterator(body.begin(), body.end(), interval); it != std::sregex_iterator(); ++it) {
      lo.push_back(parse_real((*it)[1], spec));
      hi.push_back(parse_real((*it)[2], spec));
    }
    return box_grid(lo, hi, parse_count(m[2], spec));
  }
  if (spec.rfind("disk:", 0) == 0 || spec.rfind("circle:", 0) == 0) {
    const bool disk = spec[0] == 'd';
    static const std::regex re_disk(R"(disk:\(\s*([^,]+)\s*,\s*([^)]+)\s*\):([^:]+):(\d+):(\d+))");
    static const std::regex re_circle(R"(circle:\(\s*([^,]+)\s*,\s*([^)]+)\s*\):([^:]+):(\d+))");
    std::smatch m;
    if (!std::regex_match(spec, m, disk ? re_disk : re_circle))
      throw InputError("bad spec '" + spec + "', expected " +
                       (disk ? "disk:(cx,cy):r:rings:perring" : "circle:(cx,cy):r:count"));
    const Point c = {parse_real(m[1], spec), parse_real(m[2], spec)};
    const double r = parse_real(m[3], spec);
    if (disk) return disk_grid(c, r, parse_count(m[4], spec), parse_count(m[5], spec));
    return circle_boundary(c, r, parse_count(m[4], spec));
  }
  return load_domain(spec);
}

// Header row, coordinate columns, final column named f.
Instance read_samples(const std::string& path, int degree) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open samples file '" + path + "'");
  std::string line;
  if (!std::getline(in, line)) throw InputError("samples file '" + path + "' is empty");
  std::vector<std::string> header;
  {
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
      cell.erase(0, cell.find_first_not_of(" \t\r"));
      cell.erase(cell.find_last_not_of(" \t\r") + 1);
      header.push_back(cell);
    }
  }
  if (header.size() < 2 || header.back() != "f")
    throw InputError("samples file needs coordinate columns followed by a value column named f");
  const std::size_t n = header.size() - 1;
  std::vector<Point> pts;
  std::vector<double> values;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::stringstream ss(line);
    std::string cell;
    std::vector<double> row;
    while (std::getline(ss, cell, ',')) row.push_back(parse_real(cell.substr(0, cell.find_last_not_of(" \t\r") + 1),
                                                                 "samples line " + std::to_string(line_no)));
    if (row.size() != n + 1)
      throw InputError("samples line " + std::to_string(line_no) + ": expected " + std::to_string(n + 1) +
                       " columns, found " + std::to_string(row.size()));
    values.push_back(row.back());
    row.pop_back();
    pts.push_back(std::move(row));
  }
  if (pts.empty()) throw InputError("empty domain");
  const std::size_t count = pts.size();
  Domain d(n, std::move(pts), {}, Provenance::FileImport);
  if (d.size() != count) throw InputError("samples file contains duplicate points");
  return Instance(std::move(d), std::move(values), enumerate_degree_basis(n, degree));
}

int require_degree(const Config& c) {
  if (!c.degree) throw InputError("--degree is required with --function or --samples");
  if (*c.degree < 0) throw InputError("--degree must be nonnegative");
  return *c.degree;
}

Instance load_instance(const Config& c) {
  const int sources = !c.function.empty() + !c.samples.empty() + !c.builtin.empty() + !c.instance.empty();
  if (sources != 1)
    throw InputError("give exactly one function source: --function, --samples, --builtin or --instance");
  if (!c.builtin.empty()) return get_instance(c.builtin, c.resolution).instance;
  if (!c.instance.empty()) return instance_from_json(parse_json(read_file(c.instance), "instance JSON"));
  if (!c.samples.empty()) return read_samples(c.samples, require_degree(c));
  const Expr e = parse_expr(c.function);
  const int degree = require_degree(c);
  Domain d = parse_domain(c.domain);
  if (variables_needed(e) > d.n())
    throw InputError("function uses x" + std::to_string(variables_needed(e)) + " but the domain is " +
                     std::to_string(d.n()) + "-dimensional");
  auto values = kernels::sample([&](std::span<const double> x) { return eval_expr(e, x); }, d.points(),
                                Exec::Serial);
  return Instance(std::move(d), std::move(values), enumerate_degree_basis(d.n(), degree));
}

std::string format_or(const Config& c, const std::string& fallback) {
  const std::string f = c.format.empty() ? fallback : c.format;
  if (f != "json" && f != "csv") throw InputError("--format must be json or csv");
  return f;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

std::string coord_header(std::size_t n) {
  std::string h;
  for (std::size_t k = 0; k < n; ++k) h += (k ? ",x" : "x") + std::to_string(k + 1);
  return h;
}

std::string coords(const Point& p) {
  std::string s;
  for (std::size_t k = 0; k < p.size(); ++k) s += (k ? "," : "") + format_double(clean_zero(p[k]));
  return s;
}

std::string set_name(std::size_t i, const IndexSet& neg, const IndexSet& pos) {
  const bool n = std::binary_search(neg.begin(), neg.end(), i);
  const bool p = std::binary_search(pos.begin(), pos.end(), i);
  return n && p ? "NP" : n ? "N" : p ? "P" : "";
}

std::string surface_csv(const Instance& inst, const std::vector<double>& coeffs, const IndexSet& neg,
                        const IndexSet& pos) {
  const auto r = kernels::residuals(inst.design(), coeffs, inst.values(), Exec::Parallel);
  std::ostringstream os;
  os << coord_header(inst.domain().n()) << ",f,q,f-q,set\n";
  for (std::size_t i = 0; i < inst.size(); ++i)
    os << coords(inst.domain().point(i)) << "," << format_double(clean_zero(inst.values()[i])) << ","
       << format_double(clean_zero(inst.values()[i] - r[i])) << "," << format_double(clean_zero(r[i])) << ","
       << set_name(i, neg, pos) << "\n";
  return os.str();
}

std::string kv_csv(const Json& j) {
  std::ostringstream os;
  os << "key,value\n";
  for (auto it = j.begin(); it != j.end(); ++it)
    if (it->is_primitive()) os << it.key() << "," << (it->is_string() ? it->get<std::string>() : it->dump()) << "\n";
  return os.str();
}

std::vector<double> load_candidate(const std::string& arg) {
  if (arg.empty()) throw InputError("--candidate is required");
  const bool inline_json = arg.find_first_not_of(" \t") != std::string::npos && arg[arg.find_first_not_of(" \t")] == '[';
  return coeffs_from_json(parse_json(inline_json ? arg : read_file(arg), "candidate"));
}

int cmd_solve(const Config& c, std::ostream& out, std::ostream& err) {
  const Instance inst = load_instance(c);
  const Solution s = c.relint ? relint_solution(inst, solve_options(c)) : solve_minimax(inst, solve_options(c));
  for (const auto& w : s.warnings) err << "warning: " << w << "\n";
  if (format_or(c, "json") == "csv") emit(c, surface_csv(inst, s.q.coeffs(), s.neg_set, s.pos_set), out);
  else emit(c, dump(solution_to_json(inst, s)), out);
  return kExitOk;
}

int cmd_certify(const Config& c, std::ostream& out, std::ostream& err) {
  const Instance inst = load_instance(c);
  const Polynomial q(inst.basis_ptr(), load_candidate(c.candidate));
  CertifyOptions o;
  o.tolerance = c.tolerance;
  o.arithmetic = c.exact ? Arithmetic::Exact : Arithmetic::Float;
  const Certificate cert = is_optimal(inst, q, o);
  for (const auto& w : cert.warnings) err << "warning: " << w << "\n";
  const Json j = certificate_to_json(inst, cert);
  emit(c, format_or(c, "json") == "csv" ? kv_csv(j) : dump(j), out);
  return cert.verdict == Verdict::OptimalCertified ? kExitOk : kExitSuboptimal;
}

int cmd_dimensions(const Config& c, std::ostream& out, std::ostream&) {
  const Instance inst = load_instance(c);
  const DimensionReport rep = solution_vs_cone_dimension(inst, solve_options(c));
  const Json j = dimensions_to_json(inst, rep);
  emit(c, format_or(c, "json") == "csv" ? kv_csv(j) : dump(j), out);
  return kExitOk;
}

std::vector<Point> load_points(const std::string& path, const char* flag) {
  if (path.empty()) throw InputError(std::string(flag) + " is required unless --spec is given");
  return load_domain(path).points();
}

// Box around N u P padded by d, 21 points per axis.
Domain default_bump_domain(const BumpSpec& s) {
  const std::size_t n = s.neg.front().size();
  Point lo(n, std::numeric_limits<double>::infinity()), hi(n, -std::numeric_limits<double>::infinity());
  for (const auto* set : {&s.neg, &s.pos})
    for (const auto& p : *set)
      for (std::size_t k = 0; k < n; ++k) {
        lo[k] = std::min(lo[k], p[k] - s.d);
        hi[k] = std::max(hi[k], p[k] + s.d);
      }
  return box_grid(lo, hi, 21);
}

int cmd_bump(const Config& c, std::ostream& out, std::ostream& err) {
  BumpSpec spec;
  if (!c.spec.empty()) {
    if (!c.neg_file.empty() || !c.pos_file.empty()) throw InputError("use either --spec or --N/--P, not both");
    spec = bump_spec_from_json(parse_json(read_file(c.spec), "bump spec"));
  } else {
    spec = BumpSpec::make(load_points(c.neg_file, "--N"), load_points(c.pos_file, "--P"),
                          parse_bump_variant(c.variant));
  }
  const Domain d = c.domain.empty() ? default_bump_domain(spec) : parse_domain(c.domain);
  const int degree = c.degree.value_or(2);
  if (degree < 0) throw InputError("--degree must be nonnegative");
  const BumpInstance bi = bump_instance(spec, d, enumerate_degree_basis(d.n(), degree));
  for (const auto& w : bi.warnings) err << "warning: " << w << "\n";
  const Instance& inst = bi.instance;

  if (!c.samples_output.empty()) {
    std::ofstream f(c.samples_output);
    if (!f) throw InputError("cannot write '" + c.samples_output + "'");
    f << coord_header(inst.domain().n()) << ",f\n";
    for (std::size_t i = 0; i < inst.size(); ++i)
      f << coords(inst.domain().point(i)) << "," << format_double(clean_zero(inst.values()[i])) << "\n";
  }

  const SolveOptions o = solve_options(c);
  Json j;
  j["spec"] = bump_spec_to_json(spec);
  j["points"] = inst.size();
  j["warnings"] = bi.warnings;
  j["solution"] = solution_to_json(inst, solve_minimax(inst, o));
  j["zero_certificate"] = certificate_to_json(inst, is_optimal(inst, Polynomial::zero(inst.basis_ptr())));
  j["dimensions"] = dimensions_to_json(inst, solution_vs_cone_dimension(inst, o));
  emit(c, dump(j), out);
  return kExitOk;
}

int cmd_reproduce(const Config& c, std::ostream& out, std::ostream&) {
  if (c.all == !c.id.empty()) throw InputError("give exactly one of --id or --all");
  std::vector<std::string> ids = c.all ? instance_ids() : std::vector<std::string>{c.id};
  if (!c.all) {
    const auto known = instance_ids();
    if (std::find(known.begin(), known.end(), c.id) == known.end()) get_instance(c.id);  // throws the id list
  }
  if (c.resolution_text == "sweep") {
    std::vector<RefinementRow> rows;
    for (const auto& id : ids) {
      auto r = refinement_study(id);
      rows.insert(rows.end(), r.begin(), r.end());
    }
    if (format_or(c, "csv") == "json") {
      emit(c, dump(refinement_to_json(rows)), out);
    } else {
      std::ostringstream os;
      os << "id,spacing,points,t_star,dim_q,dim_s,alpha_max\n";
      for (const auto& r : rows)
        os << r.id << "," << format_double(r.spacing) << "," << r.points << "," << format_double(r.t_star) << ","
           << r.dim_q << "," << r.dim_s << "," << format_double(r.alpha_max) << "\n";
      emit(c, os.str(), out);
    }
    return kExitOk;
  }
  const double h = c.resolution_text.empty() ? kDefaultResolution : parse_real(c.resolution_text, "--resolution");
  RunReport rep;
  rep.resolution = h;
  for (const auto& id : ids) rep.instances.push_back(run_instance(id, h, solve_options(c)));
  rep.pass = std::all_of(rep.instances.begin(), rep.instances.end(), [](const auto& r) { return r.pass; });
  if (format_or(c, "json") == "csv") {
    std::ostringstream os;
    os << "id,check,pass,detail\n";
    for (const auto& r : rep.instances) {
      if (!r.error.empty()) os << r.id << ",error,false,\"" << r.error << "\"\n";
      for (const auto& k : r.checks)
        os << r.id << ",\"" << k.name << "\"," << (k.pass ? "true" : "false") << ",\"" << k.detail << "\"\n";
    }
    emit(c, os.str(), out);
  } else {
    emit(c, dump(report_to_json(rep)), out);
  }
  const bool errors = std::any_of(rep.instances.begin(), rep.instances.end(), [](const auto& r) { return !r.error.empty(); });
  return errors ? kExitInput : rep.pass ? kExitOk : kExitSuboptimal;
}

int cmd_plotdata(const Config& c, std::ostream& out, std::ostream& err) {
  const Instance inst = load_instance(c);
  std::vector<double> coeffs;
  IndexSet neg, pos;
  if (!c.candidate.empty()) {
    const Polynomial q(inst.basis_ptr(), load_candidate(c.candidate));
    const double t = deviation_sets(inst, q, 0.0).t;
    const auto sets = deviation_sets(inst, q, c.tolerance.value_or(active_tolerance(t)));
    coeffs = q.coeffs();
    neg = sets.neg;
    pos = sets.pos;
  } else {
    Solution s = relint_solution(inst, solve_options(c));
    for (const auto& w : s.warnings) err << "warning: " << w << "\n";
    coeffs = s.q.coeffs();
    neg = std::move(s.neg_set);
    pos = std::move(s.pos_set);
  }
  emit(c, surface_csv(inst, coeffs, neg, pos), out);
  if (!c.points_output.empty()) {
    std::ofstream f(c.points_output);
    if (!f) throw InputError("cannot write '" + c.points_output + "'");
    const auto r = kernels::residuals(inst.design(), coeffs, inst.values(), Exec::Serial);
    f << coord_header(inst.domain().n()) << ",set,label,deviation\n";
    for (const auto* set : {&neg, &pos})
      for (std::size_t i : *set)
        f << coords(inst.domain().point(i)) << "," << (set == &neg ? "N" : "P") << "," << inst.domain().label(i)
          << "," << format_double(clean_zero(r[i])) << "\n";
  }
  return kExitOk;
}

void add_source(CLI::App* sub, Config& c) {
  sub->add_option("--function", c.function, "target function expression");
  sub->add_option("--samples", c.samples, "CSV of samples: header, coordinate columns, then f");
  sub->add_option("--builtin", c.builtin, "registry instance id");
  sub->add_option("--instance", c.instance, "instance JSON file");
  sub->add_option("--degree", c.degree, "total degree of the polynomial space");
  sub->add_option("--domain", c.domain, "grid:[lo,hi]x...:k, disk:(cx,cy):r:rings:perring, circle:(cx,cy):r:count, or a file");
  sub->add_option("--resolution", c.resolution, "grid spacing for --builtin");
  sub->add_option("--tolerance", c.tolerance, "absolute band for deviation sets");
  sub->add_flag("--exact", c.exact, "rational arithmetic");
  sub->add_option("--output", c.output, "write to this file instead of stdout");
  sub->add_option("--format", c.format, "json or csv");
  sub->add_option("--max-pivots", c.max_pivots, "simplex pivot cap per LP");
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"multivariate Chebyshev approximation on finite domains", "multicheb"};
  app.require_subcommand(1);
  Config c;
  auto* solve = app.add_subcommand("solve", "best approximation and its deviation sets");
  add_source(solve, c);
  solve->add_flag("--relint", c.relint, "return a relative-interior optimum");
  auto* certify = app.add_subcommand("certify", "check a candidate for optimality");
  add_source(certify, c);
  certify->add_option("--candidate", c.candidate, "JSON coefficient array (file or inline)");
  auto* dims = app.add_subcommand("dimensions", "dim Q, dim S and essential sets");
  add_source(dims, c);
  auto* bump = app.add_subcommand("bump", "bump function for prescribed N, P");
  bump->add_option("--N", c.neg_file, "points of minimal deviation (CSV or JSON domain file)");
  bump->add_option("--P", c.pos_file, "points of maximal deviation");
  bump->add_option("--spec", c.spec, "bump spec JSON {N, P, variant}");
  bump->add_option("--variant", c.variant, "sharp or smooth");
  bump->add_option("--domain", c.domain, "domain spec or file (default: padded box grid)");
  bump->add_option("--degree", c.degree, "total degree (default 2)");
  bump->add_option("--samples-output", c.samples_output, "write the sampled bump as CSV");
  bump->add_option("--tolerance", c.tolerance, "absolute band for deviation sets");
  bump->add_flag("--exact", c.exact, "rational arithmetic");
  bump->add_option("--output", c.output, "write to this file instead of stdout");
  auto* repro = app.add_subcommand("reproduce", "run the registry instances against their golden values");
  repro->add_option("--id", c.id, "instance id");
  repro->add_flag("--all", c.all, "every registered instance");
  repro->add_option("--resolution", c.resolution_text, "grid spacing, or 'sweep' for the refinement study");
  repro->add_flag("--exact", c.exact, "rational arithmetic");
  repro->add_option("--output", c.output, "write to this file instead of stdout");
  repro->add_option("--format", c.format, "json or csv");
  auto* plot = app.add_subcommand("plotdata", "CSV of f, q and f - q over the domain");
  add_source(plot, c);
  plot->add_option("--candidate", c.candidate, "coefficients to plot (default: relative-interior optimum)");
  plot->add_option("--points-output", c.points_output, "write the N/P scatter as CSV");

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      app.exit(e, out, err);
      return kExitOk;
    }
    err << "error: " << e.what() << "\n";
    return kExitInput;
  }

  try {
    if (*solve) return cmd_solve(c, out, err);
    if (*certify) return cmd_certify(c, out, err);
    if (*dims) return cmd_dimensions(c, out, err);
    if (*bump) return cmd_bump(c, out, err);
    if (*repro) return cmd_reproduce(c, out, err);
    return cmd_plotdata(c, out, err);
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const TheoryViolation& e) {
    err << "error: " << e.what() << "\n";
    return kExitNumeric;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitNumeric;
  }
}

}  // namespace multicheb
