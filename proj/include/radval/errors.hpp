#pragma once

#include <stdexcept>

namespace radval {

/// Two operands live on different direction grids.
struct GridMismatch : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// An argument lies outside the range an object was built for (kernel levels, indices).
struct RangeError : std::out_of_range {
  using std::out_of_range::out_of_range;
};

/// The operation needs structure (a kernel) that a black-box valuation does not expose.
struct Unsupported : std::logic_error {
  using std::logic_error::logic_error;
};

/// A documented precondition of an operation does not hold for the given inputs.
struct PreconditionViolation : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Every term of a normalized control measure vanished.
struct DegenerateMeasure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// An iterative limit did not settle within its iteration cap.
struct NotConverged : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace radval
