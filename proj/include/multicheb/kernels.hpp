#pragma once

// Data-parallel evaluation kernels. Each kernel has a serial reference and an
// OpenMP version; both produce bit-identical results because every output
// element is computed independently and max-reductions are order-free.

#include <functional>
#include <span>
#include <vector>

#include "multicheb/linalg.hpp"
#include "multicheb/poly.hpp"
#include "multicheb/types.hpp"

namespace multicheb {

enum class Exec { Serial, Parallel };

namespace kernels {

Matrix<double> design_matrix(const Basis& basis, std::span<const Point> points, Exec exec);

// r_i = values_i - (G c)_i
std::vector<double> residuals(const Matrix<double>& design, std::span<const double> coeffs,
                              std::span<const double> values, Exec exec);

double max_abs(std::span<const double> v, Exec exec);

using PointFunction = std::function<double(std::span<const double>)>;

// f evaluated at every point. Exceptions thrown by f are rethrown after the
// loop (the first one by point index).
std::vector<double> sample(const PointFunction& f, std::span<const Point> points, Exec exec);

}  // namespace kernels
}  // namespace multicheb
