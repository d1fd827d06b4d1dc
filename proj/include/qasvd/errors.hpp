#pragma once

#include <stdexcept>
#include <string>

namespace qasvd {

// Root of the library's error hierarchy.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad inputs: malformed files, dimension clashes, invalid parameters.
// The CLI maps these to exit code 2.
class InputError : public Error {
 public:
  using Error::Error;
};

// A computation that ran but failed to produce an acceptable result.
// The CLI maps these to exit code 1.
class NumericError : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public InputError {
 public:
  using InputError::InputError;
};

class IndexOutOfRange : public InputError {
 public:
  using InputError::InputError;
};

// A column with (numerically) zero variance cannot be normalized.
class ConstantColumn : public InputError {
 public:
  ConstantColumn(long column, const std::string& what)
      : InputError(what), column_(column) {}
  long column() const { return column_; }

 private:
  long column_;
};

class ZeroSingularValue : public InputError {
 public:
  using InputError::InputError;
};

class NotSymmetric : public InputError {
 public:
  using InputError::InputError;
};

class MalformedHeader : public InputError {
 public:
  using InputError::InputError;
};

class TruncatedPixels : public InputError {
 public:
  using InputError::InputError;
};

class UnsupportedMagic : public InputError {
 public:
  using InputError::InputError;
};

class IoError : public InputError {
 public:
  using InputError::InputError;
};

class ConfigError : public InputError {
 public:
  using InputError::InputError;
};

// Annealing did not reach the residual tolerance within the retry cap.
class NotConverged : public NumericError {
 public:
  NotConverged(double bestResidual, long componentIndex, const std::string& what)
      : NumericError(what),
        bestResidual_(bestResidual),
        componentIndex_(componentIndex) {}
  double best_residual() const { return bestResidual_; }
  long component_index() const { return componentIndex_; }

 private:
  double bestResidual_;
  long componentIndex_;
};

// First-order stepping left the safe norm window [0.5, 2]: dt too large.
class NormBlowup : public NumericError {
 public:
  using NumericError::NumericError;
};

class MaxIterExceeded : public NumericError {
 public:
  using NumericError::NumericError;
};

// Series truncation order reached before the tail fell under tolerance.
class TruncationNotReached : public NumericError {
 public:
  using NumericError::NumericError;
};

// T * Hbound outside the range where the power series is numerically usable.
class SeriesRange : public NumericError {
 public:
  using NumericError::NumericError;
};

class NegativeDiscriminant : public NumericError {
 public:
  using NumericError::NumericError;
};

// Overlap alpha in {0, +-1}: the closed-form gap expressions degenerate.
class DegenerateOverlap : public NumericError {
 public:
  using NumericError::NumericError;
};

class IllConditioned : public NumericError {
 public:
  using NumericError::NumericError;
};

}  // namespace qasvd
