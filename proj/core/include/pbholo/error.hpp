#pragma once

#include <stdexcept>
#include <string>

namespace pbholo {

// Contract violation on caller-supplied input (bad file, out-of-range value,
// mismatched grids). The CLI maps this to exit code 2.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// The numerics could not produce a trustworthy answer (eigen-solver failure,
// non-finite intermediate). The CLI maps this to exit code 3.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A propagation request would alias on the current grid.
class AliasingError : public InputError {
 public:
  AliasingError(const std::string& what, int required_padding);
  int required_padding() const noexcept { return required_padding_; }

 private:
  int required_padding_;
};

// A phase profile is too steep for the requested sample pitch.
class SamplingError : public InputError {
 public:
  SamplingError(const std::string& what, double required_pitch);
  double required_pitch() const noexcept { return required_pitch_; }

 private:
  double required_pitch_;
};

}  // namespace pbholo
