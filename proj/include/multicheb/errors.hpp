#pragma once

#include <stdexcept>
#include <string>

namespace multicheb {

/// Malformed user input: dimension mismatches, unparsable files, unknown ids.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// The LP engine stalled, or floating-point results became inconsistent.
class NumericFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A computed quantity contradicts a proven inequality (dim Q <= dim S and
/// friends). Always an implementation or tolerance problem.
class TheoryViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace multicheb
