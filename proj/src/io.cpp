#include "multicheb/io.hpp"

#include <algorithm>

#include "multicheb/errors.hpp"

namespace multicheb {

double clean_zero(double x) { return x == 0.0 ? 0.0 : x; }

namespace {

Json clean(const std::vector<double>& v) {
  Json a = Json::array();
  for (double x : v) a.push_back(clean_zero(x));
  return a;
}

Json clean(const std::vector<std::vector<double>>& vs) {
  Json a = Json::array();
  for (const auto& v : vs) a.push_back(clean(v));
  return a;
}

template <class F>
auto guard(const char* what, F&& f) {
  try {
    return f();
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string(what) + ": " + e.what());
  }
}

Term term_from_json(const Json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_array() || !j[1].is_number())
    throw InputError("basis term must be [exponents, coeff]");
  return Term{MultiIndex{j[0].get<std::vector<int>>()}, j[1].get<double>()};
}

}  // namespace

Json basis_to_json(const Basis& b) {
  Json j;
  j["n"] = b.n();
  Json elems = Json::array();
  for (const auto& e : b.elements()) {
    auto term = [](const Term& t) { return Json::array({t.index.exponents, clean_zero(t.coeff)}); };
    if (e.size() == 1) {
      elems.push_back(term(e[0]));
    } else {
      Json multi = Json::array();
      for (const auto& t : e) multi.push_back(term(t));
      elems.push_back(multi);
    }
  }
  j["elements"] = elems;
  j["label"] = b.label();
  return j;
}

BasisPtr basis_from_json(const Json& j) {
  return guard("basis JSON", [&] {
    const auto n = j.at("n").get<std::size_t>();
    std::vector<BasisElement> elements;
    for (const auto& e : j.at("elements")) {
      if (!e.is_array() || e.empty()) throw InputError("basis element must be a nonempty array");
      BasisElement el;
      if (e[0].is_array() && !e[0].empty() && e[0][0].is_array()) {
        for (const auto& t : e) el.push_back(term_from_json(t));
      } else {
        el.push_back(term_from_json(e));
      }
      elements.push_back(std::move(el));
    }
    const std::string label = j.contains("label") ? j.at("label").get<std::string>() : "custom";
    return std::make_shared<const Basis>(n, std::move(elements), label);
  });
}

Json domain_to_json(const Domain& d) {
  Json j;
  j["n"] = d.n();
  j["points"] = clean(d.points());
  const bool any = std::any_of(d.labels().begin(), d.labels().end(), [](const auto& l) { return !l.empty(); });
  if (any) j["labels"] = d.labels();
  return j;
}

Domain domain_from_json(const Json& j) {
  return guard("domain JSON", [&] {
    const auto& pts = j.at("points");
    if (pts.empty()) throw InputError("empty domain");
    const std::size_t n = j.contains("n") ? j.at("n").get<std::size_t>() : pts.at(0).size();
    std::vector<std::string> labels;
    if (j.contains("labels") && !j.at("labels").is_null()) labels = j.at("labels").get<std::vector<std::string>>();
    return Domain(n, pts.get<std::vector<Point>>(), std::move(labels), Provenance::FileImport);
  });
}

Json instance_to_json(const Instance& inst) {
  Json j;
  j["domain"] = domain_to_json(inst.domain());
  j["values"] = clean(inst.values());
  j["basis"] = basis_to_json(inst.basis());
  return j;
}

Instance instance_from_json(const Json& j) {
  return guard("instance JSON", [&] {
    Domain d = domain_from_json(j.at("domain"));
    auto values = j.at("values").get<std::vector<double>>();
    auto basis = basis_from_json(j.at("basis"));
    if (values.size() != d.size())
      throw InputError("instance JSON: " + std::to_string(values.size()) + " values for " +
                       std::to_string(d.size()) + " distinct points");
    return Instance(std::move(d), std::move(values), std::move(basis));
  });
}

Json points_to_json(const Domain& d, const IndexSet& idx) {
  Json a = Json::array();
  for (std::size_t i : idx) {
    Json p;
    p["index"] = i;
    p["point"] = clean(d.point(i));
    if (!d.label(i).empty()) p["label"] = d.label(i);
    a.push_back(p);
  }
  return a;
}

Json solution_to_json(const Instance& inst, const Solution& s) {
  Json j;
  j["basis"] = basis_to_json(inst.basis());
  j["coefficients"] = clean(s.q.coeffs());
  j["t_star"] = clean_zero(s.t_star);
  j["is_relint"] = s.is_relint;
  j["unbounded"] = s.unbounded;
  j["N"] = points_to_json(inst.domain(), s.neg_set);
  j["P"] = points_to_json(inst.domain(), s.pos_set);
  j["warnings"] = s.warnings;
  return j;
}

Json certificate_to_json(const Instance& inst, const Certificate& c) {
  Json j;
  j["verdict"] = to_string(c.verdict);
  j["t"] = clean_zero(c.t);
  j["N"] = points_to_json(inst.domain(), c.neg_set);
  j["P"] = points_to_json(inst.domain(), c.pos_set);
  if (c.witness) {
    j["witness"] = clean(c.witness->coeffs());
    j["margin"] = c.margin;
    j["descent_step"] = c.step;
    j["improved_t"] = c.improved_t;
  } else {
    j["witness"] = nullptr;
  }
  j["warnings"] = c.warnings;
  return j;
}

Json dimensions_to_json(const Instance& inst, const DimensionReport& r) {
  Json j;
  j["dim_Q"] = r.dim_q;
  j["dim_S"] = r.dim_s;
  j["t_star"] = clean_zero(r.t_star);
  j["arithmetic"] = r.arithmetic == Arithmetic::Exact ? "exact" : "float";
  j["unbounded"] = r.unbounded;
  j["q_directions"] = clean(r.q_directions);
  j["s_rays"] = clean(r.s_rays);
  j["essential_N"] = points_to_json(inst.domain(), r.essential_neg);
  j["essential_P"] = points_to_json(inst.domain(), r.essential_pos);
  j["warnings"] = r.warnings;
  return j;
}

Json containment_to_json(const Instance& inst, const ContainmentReport& r) {
  Json j;
  j["pass"] = r.pass;
  j["missing_N"] = points_to_json(inst.domain(), r.missing_neg);
  j["missing_P"] = points_to_json(inst.domain(), r.missing_pos);
  j["extra_N"] = points_to_json(inst.domain(), r.extra_neg);
  j["extra_P"] = points_to_json(inst.domain(), r.extra_pos);
  return j;
}

Json bump_spec_to_json(const BumpSpec& s) {
  Json j;
  j["N"] = clean(s.neg);
  j["P"] = clean(s.pos);
  j["d"] = s.d;
  j["variant"] = to_string(s.variant);
  return j;
}

BumpSpec bump_spec_from_json(const Json& j) {
  return guard("bump spec JSON", [&] {
    const BumpVariant v =
        j.contains("variant") ? parse_bump_variant(j.at("variant").get<std::string>()) : BumpVariant::Sharp;
    return BumpSpec::make(j.at("N").get<std::vector<Point>>(), j.at("P").get<std::vector<Point>>(), v);
  });
}

Json report_to_json(const InstanceReport& r) {
  Json j;
  j["id"] = r.id;
  j["resolution"] = r.resolution;
  j["pass"] = r.pass;
  if (!r.error.empty()) j["error"] = r.error;
  j["points"] = r.points;
  j["t_star"] = clean_zero(r.t_star);
  j["dim_Q"] = r.dim_q;
  j["dim_S"] = r.dim_s;
  Json checks = Json::array();
  for (const auto& c : r.checks) {
    Json k;
    k["name"] = c.name;
    k["pass"] = c.pass;
    k["detail"] = c.detail;
    checks.push_back(k);
  }
  j["checks"] = checks;
  return j;
}

Json report_to_json(const RunReport& r) {
  Json j;
  j["resolution"] = r.resolution;
  j["pass"] = r.pass;
  Json a = Json::array();
  for (const auto& i : r.instances) a.push_back(report_to_json(i));
  j["instances"] = a;
  return j;
}

Json refinement_to_json(const std::vector<RefinementRow>& rows) {
  Json a = Json::array();
  for (const auto& r : rows) {
    Json j;
    j["id"] = r.id;
    j["spacing"] = r.spacing;
    j["points"] = r.points;
    j["t_star"] = clean_zero(r.t_star);
    j["dim_Q"] = r.dim_q;
    j["dim_S"] = r.dim_s;
    j["alpha_max"] = r.alpha_max;
    j["ray"] = clean(r.ray);
    a.push_back(j);
  }
  return a;
}

std::vector<double> coeffs_from_json(const Json& j) {
  if (!j.is_array()) throw InputError("coefficients must be a JSON array of numbers");
  std::vector<double> out;
  for (const auto& v : j) {
    if (!v.is_number()) throw InputError("coefficients must be a JSON array of numbers");
    out.push_back(v.get<double>());
  }
  return out;
}

}  // namespace multicheb
