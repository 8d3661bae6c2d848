#include "multicheb/domain.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <numbers>
#include <sstream>

#include "json.hpp"
#include "multicheb/errors.hpp"

namespace multicheb {

std::string_view to_string(Provenance p) {
  switch (p) {
    case Provenance::Explicit: return "explicit";
    case Provenance::BoxGrid: return "box-grid";
    case Provenance::DiskGrid: return "disk-grid";
    case Provenance::CircleBoundary: return "circle-boundary";
    case Provenance::Union: return "union";
    case Provenance::FileImport: return "file-import";
  }
  return "unknown";
}

namespace {

double distance(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) s += (a[k] - b[k]) * (a[k] - b[k]);
  return std::sqrt(s);
}

// Incremental dedup keyed on the first coordinate.
class PointIndex {
 public:
  explicit PointIndex(const std::vector<Point>& pts) : pts_(pts) {}

  std::optional<std::size_t> find(std::span<const double> x) const {
    auto it = by_first_.lower_bound(x[0] - kDedupTolerance);
    for (; it != by_first_.end() && it->first <= x[0] + kDedupTolerance; ++it)
      if (distance(pts_[it->second], x) <= kDedupTolerance) return it->second;
    return std::nullopt;
  }

  void insert(std::size_t i) { by_first_.emplace(pts_[i][0], i); }

 private:
  const std::vector<Point>& pts_;
  std::multimap<double, std::size_t> by_first_;
};

}  // namespace

Domain::Domain(std::size_t n, std::vector<Point> points, std::vector<std::string> labels,
               Provenance provenance)
    : n_(n), provenance_(provenance) {
  if (n_ == 0) throw InputError("domain dimension must be at least 1");
  if (!labels.empty() && labels.size() != points.size())
    throw InputError("domain has " + std::to_string(points.size()) + " points but " +
                     std::to_string(labels.size()) + " labels");
  labels.resize(points.size());
  PointIndex index(points_);
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (points[i].size() != n_)
      throw InputError("point " + std::to_string(i) + " has dimension " +
                       std::to_string(points[i].size()) + ", domain is " + std::to_string(n_) +
                       "-dimensional");
    for (double c : points[i])
      if (!std::isfinite(c)) throw InputError("point " + std::to_string(i) + " is not finite");
    if (auto j = index.find(points[i])) {
      if (labels_[*j].empty()) labels_[*j] = std::move(labels[i]);
      continue;
    }
    points_.push_back(std::move(points[i]));
    labels_.push_back(std::move(labels[i]));
    index.insert(points_.size() - 1);
  }
}

std::optional<std::size_t> Domain::find(std::span<const double> x) const {
  if (x.size() != n_) return std::nullopt;
  for (std::size_t i = 0; i < points_.size(); ++i)
    if (distance(points_[i], x) <= kDedupTolerance) return i;
  return std::nullopt;
}

std::optional<std::size_t> Domain::find_label(std::string_view label) const {
  for (std::size_t i = 0; i < labels_.size(); ++i)
    if (labels_[i] == label) return i;
  return std::nullopt;
}

Domain box_grid(const Point& lo, const Point& hi, std::size_t per_axis) {
  if (lo.empty() || lo.size() != hi.size()) throw InputError("box corners must have equal, positive dimension");
  for (std::size_t k = 0; k < lo.size(); ++k)
    if (!(lo[k] < hi[k])) throw InputError("degenerate box along axis " + std::to_string(k));
  if (per_axis < 2) throw InputError("box grid needs at least 2 points per axis");
  const std::size_t n = lo.size();
  // Symmetric formula so that e.g. [-1,1] with odd per_axis hits 0 exactly.
  auto coord = [&](std::size_t axis, std::size_t k) {
    const double m = static_cast<double>(per_axis - 1);
    return (lo[axis] * (m - static_cast<double>(k)) + hi[axis] * static_cast<double>(k)) / m;
  };
  std::size_t total = 1;
  for (std::size_t k = 0; k < n; ++k) total *= per_axis;
  std::vector<Point> pts;
  pts.reserve(total);
  std::vector<std::size_t> idx(n, 0);
  for (std::size_t c = 0; c < total; ++c) {
    Point p(n);
    for (std::size_t k = 0; k < n; ++k) p[k] = coord(k, idx[k]);
    pts.push_back(std::move(p));
    for (std::size_t k = n; k-- > 0;) {
      if (++idx[k] < per_axis) break;
      idx[k] = 0;
    }
  }
  return Domain(n, std::move(pts), {}, Provenance::BoxGrid);
}

namespace {

// cos and sin of 2*pi*j/m, exact at multiples of pi/6 so hexagon and square
// vertices land on the intended doubles.
std::pair<double, double> unit_angle(std::size_t j, std::size_t m) {
  if ((12 * j) % m == 0) {
    static const double h = std::numbers::sqrt3 / 2.0;
    static const double cs[12][2] = {{1, 0},   {h, 0.5},   {0.5, h},   {0, 1},
                                     {-0.5, h}, {-h, 0.5}, {-1, 0},    {-h, -0.5},
                                     {-0.5, -h}, {0, -1},  {0.5, -h},  {h, -0.5}};
    const std::size_t k = (12 * j / m) % 12;
    return {cs[k][0], cs[k][1]};
  }
  if ((8 * j) % m == 0) {
    static const double r = std::numbers::sqrt2 / 2.0;
    static const double cs[8][2] = {{1, 0}, {r, r}, {0, 1}, {-r, r}, {-1, 0}, {-r, -r}, {0, -1}, {r, -r}};
    const std::size_t k = (8 * j / m) % 8;
    return {cs[k][0], cs[k][1]};
  }
  const double a = 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(m);
  return {std::cos(a), std::sin(a)};
}

}  // namespace

Domain disk_grid(const Point& center, double radius, std::size_t rings, std::size_t per_ring) {
  if (center.size() != 2) throw InputError("disk grid is defined in R^2");
  if (!(radius > 0.0) || !std::isfinite(radius)) throw InputError("disk radius must be positive");
  if (rings < 1) throw InputError("disk grid needs at least one ring");
  if (per_ring < 3) throw InputError("disk grid needs at least 3 points per ring");
  std::vector<Point> pts;
  pts.reserve(1 + rings * per_ring);
  pts.push_back(center);
  for (std::size_t k = 1; k <= rings; ++k) {
    const double r = radius * static_cast<double>(k) / static_cast<double>(rings);
    for (std::size_t j = 0; j < per_ring; ++j) {
      auto [c, s] = unit_angle(j, per_ring);
      pts.push_back({center[0] + r * c, center[1] + r * s});
    }
  }
  return Domain(2, std::move(pts), {}, Provenance::DiskGrid);
}

Domain circle_boundary(const Point& center, double radius, std::size_t count) {
  if (center.size() != 2) throw InputError("circle is defined in R^2");
  if (!(radius > 0.0) || !std::isfinite(radius)) throw InputError("circle radius must be positive");
  if (count < 3) throw InputError("circle needs at least 3 points");
  std::vector<Point> pts;
  for (std::size_t j = 0; j < count; ++j) {
    auto [c, s] = unit_angle(j, count);
    pts.push_back({center[0] + radius * c, center[1] + radius * s});
  }
  return Domain(2, std::move(pts), {}, Provenance::CircleBoundary);
}

Domain with_points(const Domain& base, std::span<const Point> extra,
                   std::span<const std::string> extra_labels) {
  if (!extra_labels.empty() && extra_labels.size() != extra.size())
    throw InputError("extra points and labels differ in length");
  std::vector<Point> pts = base.points();
  std::vector<std::string> labels = base.labels();
  for (std::size_t i = 0; i < extra.size(); ++i) {
    if (extra[i].size() != base.n())
      throw InputError("extra point " + std::to_string(i) + " has dimension " +
                       std::to_string(extra[i].size()) + ", domain is " +
                       std::to_string(base.n()) + "-dimensional");
    pts.push_back(extra[i]);
    labels.push_back(extra_labels.empty() ? std::string() : extra_labels[i]);
  }
  const Provenance prov = extra.empty() ? base.provenance() : Provenance::Union;
  return Domain(base.n(), std::move(pts), std::move(labels), prov);
}

std::string format_double(double x) {
  if (x == 0.0) return "0";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::optional<double> parse_number(std::string_view s) {
  s = trim(s);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  if (s.empty()) return std::nullopt;
  double v = 0.0;
  auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    const std::size_t pos = line.find(sep, start);
    out.push_back(line.substr(start, pos == std::string_view::npos ? line.npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

Domain read_csv(std::istream& in) {
  std::vector<Point> pts;
  std::vector<std::string> labels;
  std::size_t n = 0;
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line = trim(raw);
    if (line.empty() || line.front() == '#') continue;
    auto fields = split(line, ',');
    Point p;
    std::string label;
    for (std::size_t k = 0; k < fields.size(); ++k) {
      if (auto v = parse_number(fields[k])) {
        p.push_back(*v);
      } else if (k + 1 == fields.size() && k > 0) {
        label = std::string(trim(fields[k]));
      } else {
        throw InputError("line " + std::to_string(line_no) + ": non-numeric coordinate '" +
                         std::string(trim(fields[k])) + "'");
      }
    }
    if (n == 0) n = p.size();
    if (p.size() != n)
      throw InputError("line " + std::to_string(line_no) + ": expected " + std::to_string(n) +
                       " coordinates, found " + std::to_string(p.size()));
    pts.push_back(std::move(p));
    labels.push_back(std::move(label));
  }
  if (pts.empty()) throw InputError("empty domain");
  return Domain(n, std::move(pts), std::move(labels), Provenance::FileImport);
}

Domain read_json(std::istream& in) {
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError(std::string("domain JSON: ") + e.what());
  }
  try {
    const auto& points = j.at("points");
    if (points.empty()) throw InputError("empty domain");
    const std::size_t n = j.contains("n") ? j.at("n").get<std::size_t>() : points.at(0).size();
    std::vector<Point> pts;
    for (const auto& p : points) pts.push_back(p.get<Point>());
    std::vector<std::string> labels;
    if (j.contains("labels") && !j.at("labels").is_null())
      labels = j.at("labels").get<std::vector<std::string>>();
    return Domain(n, std::move(pts), std::move(labels), Provenance::FileImport);
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("domain JSON: ") + e.what());
  }
}

}  // namespace

Domain read_domain(std::istream& in, DomainFormat format) {
  return format == DomainFormat::Csv ? read_csv(in) : read_json(in);
}

Domain load_domain(const std::string& path, std::optional<DomainFormat> format) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open domain file '" + path + "'");
  if (!format) {
    const bool json = path.size() >= 5 && path.compare(path.size() - 5, 5, ".json") == 0;
    format = json ? DomainFormat::Json : DomainFormat::Csv;
  }
  return read_domain(in, *format);
}

void write_domain(const Domain& d, std::ostream& out, DomainFormat format) {
  const bool any_label =
      std::any_of(d.labels().begin(), d.labels().end(), [](const auto& l) { return !l.empty(); });
  if (format == DomainFormat::Csv) {
    for (std::size_t i = 0; i < d.size(); ++i) {
      for (std::size_t k = 0; k < d.n(); ++k) out << (k ? "," : "") << format_double(d.point(i)[k]);
      if (!d.label(i).empty()) out << "," << d.label(i);
      out << "\n";
    }
    return;
  }
  nlohmann::ordered_json j;
  j["n"] = d.n();
  j["points"] = d.points();
  if (any_label) j["labels"] = d.labels();
  out << j.dump() << "\n";
}

void save_domain(const Domain& d, const std::string& path, DomainFormat format) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write domain file '" + path + "'");
  write_domain(d, out, format);
}

}  // namespace multicheb
