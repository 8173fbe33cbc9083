#pragma once

#include <stdexcept>
#include <string>

namespace hopfcx {

// Base class for all engine errors.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Newton projection ran out of iterations.
struct NoConvergence : Error {
  using Error::Error;
};

// Constraint Jacobian rank below the declared value at a probe point.
struct RankDeficient : Error {
  using Error::Error;
};

// Rejection sampling exceeded the failure budget.
struct SamplingExhausted : Error {
  using Error::Error;
};

// A field or vector failed the tangency / horizontality check.
struct TangencyViolation : Error {
  using Error::Error;
};

// A bundle container invariant failed at construction probes.
struct StructureViolation : Error {
  using Error::Error;
};

struct BadDimension : Error {
  using Error::Error;
};

// Fiber matrix violates trace 0 / determinant 1.
struct BadFiberMatrix : Error {
  using Error::Error;
};

struct NotAFrame : Error {
  using Error::Error;
};

struct RegularityFailure : Error {
  using Error::Error;
};

struct InfeasibleForSmallN : Error {
  using Error::Error;
};

struct ManifestError : Error {
  using Error::Error;
};

}  // namespace hopfcx
