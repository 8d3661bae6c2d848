#include "multicheb/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <string>

#include "multicheb/errors.hpp"

namespace multicheb::kernels {

namespace {

void check_points(const Basis& basis, std::span<const Point> points) {
  for (std::size_t i = 0; i < points.size(); ++i)
    if (points[i].size() != basis.n())
      throw InputError("point " + std::to_string(i) + " has dimension " +
                       std::to_string(points[i].size()) + ", basis expects " +
                       std::to_string(basis.n()));
}

}  // namespace

Matrix<double> design_matrix(const Basis& basis, std::span<const Point> points, Exec exec) {
  check_points(basis, points);
  Matrix<double> g(points.size(), basis.size());
  const auto count = static_cast<long>(points.size());
  if (exec == Exec::Serial) {
    for (long i = 0; i < count; ++i)
      basis.evaluate<double>(points[i], g.row(i));
  } else {
#pragma omp parallel for schedule(static)
    for (long i = 0; i < count; ++i)
      basis.evaluate<double>(points[i], g.row(i));
  }
  return g;
}

std::vector<double> residuals(const Matrix<double>& design, std::span<const double> coeffs,
                              std::span<const double> values, Exec exec) {
  if (coeffs.size() != design.cols() || values.size() != design.rows())
    throw InputError("residuals: size mismatch");
  std::vector<double> r(design.rows());
  const auto count = static_cast<long>(design.rows());
  auto body = [&](long i) {
    auto gi = design.row(i);
    double acc = 0.0;
    for (std::size_t j = 0; j < coeffs.size(); ++j) acc += gi[j] * coeffs[j];
    r[i] = values[i] - acc;
  };
  if (exec == Exec::Serial) {
    for (long i = 0; i < count; ++i) body(i);
  } else {
#pragma omp parallel for schedule(static)
    for (long i = 0; i < count; ++i) body(i);
  }
  return r;
}

double max_abs(std::span<const double> v, Exec exec) {
  double m = 0.0;
  const auto count = static_cast<long>(v.size());
  if (exec == Exec::Serial) {
    for (long i = 0; i < count; ++i) m = std::max(m, std::abs(v[i]));
  } else {
#pragma omp parallel for reduction(max : m) schedule(static)
    for (long i = 0; i < count; ++i) m = std::max(m, std::abs(v[i]));
  }
  return m;
}

std::vector<double> sample(const PointFunction& f, std::span<const Point> points, Exec exec) {
  std::vector<double> out(points.size());
  if (exec == Exec::Serial) {
    for (std::size_t i = 0; i < points.size(); ++i) out[i] = f(points[i]);
    return out;
  }
  std::vector<std::exception_ptr> errors(points.size());
  const auto count = static_cast<long>(points.size());
#pragma omp parallel for schedule(static)
  for (long i = 0; i < count; ++i) {
    try {
      out[i] = f(points[i]);
    } catch (...) {
      errors[i] = std::current_exception();
    }
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

}  // namespace multicheb::kernels
