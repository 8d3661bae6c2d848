#pragma once

#include <cmath>
#include <string>

#include <gmpxx.h>

#include "multicheb/errors.hpp"

namespace multicheb {

using Rational = mpq_class;

// Every finite double is a dyadic rational, so the conversion is exact.
inline Rational to_rational(double x) {
  if (!std::isfinite(x)) throw InputError("cannot convert non-finite value to a rational");
  return Rational(x);
}

inline double to_double(const Rational& q) { return q.get_d(); }
inline double to_double(double x) { return x; }

inline std::string to_string(const Rational& q) { return q.get_str(); }

template <class S>
struct ScalarTraits;

template <>
struct ScalarTraits<double> {
  static constexpr bool exact = false;
  static double from_double(double x) { return x; }
  static bool positive(double x, double tol) { return x > tol; }
  static bool negative(double x, double tol) { return x < -tol; }
  static bool zero(double x, double tol) { return std::abs(x) <= tol; }
  static double abs(double x) { return std::abs(x); }
};

template <>
struct ScalarTraits<Rational> {
  static constexpr bool exact = true;
  static Rational from_double(double x) { return to_rational(x); }
  static bool positive(const Rational& x, double) { return sgn(x) > 0; }
  static bool negative(const Rational& x, double) { return sgn(x) < 0; }
  static bool zero(const Rational& x, double) { return sgn(x) == 0; }
  static Rational abs(const Rational& x) { return ::abs(x); }
};

}  // namespace multicheb
