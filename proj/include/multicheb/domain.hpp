#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "multicheb/types.hpp"

namespace multicheb {

enum class Provenance { Explicit, BoxGrid, DiskGrid, CircleBoundary, Union, FileImport };

std::string_view to_string(Provenance p);

inline constexpr double kDedupTolerance = 1e-12;

// Finite point set X in R^n. Points are pairwise more than kDedupTolerance
// apart (max-norm); labels are optional and may be empty strings.
class Domain {
 public:
  // Deduplicates, keeping the first occurrence of each point (and its label,
  // unless it is empty and a later duplicate has one).
  Domain(std::size_t n, std::vector<Point> points, std::vector<std::string> labels = {},
         Provenance provenance = Provenance::Explicit);

  std::size_t n() const { return n_; }
  std::size_t size() const { return points_.size(); }
  bool empty() const { return points_.empty(); }
  const std::vector<Point>& points() const { return points_; }
  const Point& point(std::size_t i) const { return points_[i]; }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::string& label(std::size_t i) const { return labels_[i]; }
  Provenance provenance() const { return provenance_; }

  // Index of a point within kDedupTolerance of x, if any.
  std::optional<std::size_t> find(std::span<const double> x) const;
  std::optional<std::size_t> find_label(std::string_view label) const;

  // Same points and labels in the same order; provenance is not compared.
  friend bool operator==(const Domain& a, const Domain& b) {
    return a.n_ == b.n_ && a.points_ == b.points_ && a.labels_ == b.labels_;
  }

 private:
  std::size_t n_;
  std::vector<Point> points_;
  std::vector<std::string> labels_;
  Provenance provenance_;
};

Domain box_grid(const Point& lo, const Point& hi, std::size_t per_axis);

// Center plus `rings` concentric rings of `per_ring` points each.
Domain disk_grid(const Point& center, double radius, std::size_t rings, std::size_t per_ring);

Domain circle_boundary(const Point& center, double radius, std::size_t count);

Domain with_points(const Domain& base, std::span<const Point> extra,
                   std::span<const std::string> extra_labels = {});

enum class DomainFormat { Csv, Json };

// The format is guessed from the extension when not given (".json" -> Json).
Domain load_domain(const std::string& path, std::optional<DomainFormat> format = std::nullopt);
Domain read_domain(std::istream& in, DomainFormat format);
void save_domain(const Domain& d, const std::string& path, DomainFormat format);
void write_domain(const Domain& d, std::ostream& out, DomainFormat format);

// Shortest decimal that reads back to the same double.
std::string format_double(double x);

}  // namespace multicheb
