#pragma once

#include <stdexcept>
#include <string>

namespace fastlight {

// Base class for every domain failure the library can raise.  Split into
// two families so callers (the CLI in particular) can map them to exit
// codes: configuration/validation problems vs numeric failures raised by
// an otherwise valid computation.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

class NumericError : public Error {
 public:
  using Error::Error;
};

// |chi| >= 1e-2: the linearized index n = 1 + Re chi / 2 is untrustworthy.
class DiluteRegimeViolation : public NumericError {
 public:
  using NumericError::NumericError;
};

// |sigma*dS/n0| >= 1e-2: the fractional-shift formulas lose validity.
class SmallnessViolation : public NumericError {
 public:
  using NumericError::NumericError;
};

// No sign change of the objective inside the search bracket.
class NotBracketed : public NumericError {
 public:
  using NumericError::NumericError;
};

// |n_g| <= 1e-3 * n0: the first-order beat formula diverges.
class CadSingularity : public NumericError {
 public:
  using NumericError::NumericError;
};

// 1 + Q*xi^2 < 0 (or a vanishing branch denominator): the quadratic
// closure has no usable real solution at these parameters.
class ComplexRoot : public NumericError {
 public:
  using NumericError::NumericError;
};

// Q = 0: the enhancement bound is infinite, not a number.
class ZeroQ : public NumericError {
 public:
  using NumericError::NumericError;
};

class ZeroSigma : public NumericError {
 public:
  using NumericError::NumericError;
};

// Requested a negative-slope target from a medium whose center slope is
// not negative (rabi_scale knob only rescales the magnitude).
class SlopeSignMismatch : public NumericError {
 public:
  using NumericError::NumericError;
};

// Wraps a component failure with the pipeline stage that raised it.
class PipelineError : public Error {
 public:
  PipelineError(std::string stage, const Error& cause, bool numeric)
      : Error("[" + stage + "] " + cause.what()),
        stage_(std::move(stage)),
        numeric_(numeric) {}

  const std::string& stage() const { return stage_; }
  bool numeric() const { return numeric_; }

 private:
  std::string stage_;
  bool numeric_;
};

}  // namespace fastlight
