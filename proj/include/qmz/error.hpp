#pragma once
#include <stdexcept>
#include <string>

namespace qmz {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// arithmetic on series with different coefficient semantics
struct ModeMismatchError : Error {
  using Error::Error;
};
// inverting a series whose constant term vanishes
struct NonUnitError : Error {
  using Error::Error;
};
// unsupported generator / operand outside an operation's domain
struct DomainError : Error {
  using Error::Error;
};
// numerical evaluation failed to reach the requested tolerance
struct PrecisionError : Error {
  using Error::Error;
};
// a quantity could not be decided from the data computed so far
struct IndeterminateError : Error {
  using Error::Error;
};
// |F| dips below the safe floor along a winding path
struct ContourThroughZeroError : Error {
  using Error::Error;
};
// contour counts disagree across configuration perturbations
struct UnstableCountError : Error {
  using Error::Error;
};
// a theorem's hypothesis fails (e.g. common zeros of the two components)
struct PreconditionError : Error {
  using Error::Error;
};
// |g| dips without a sign change: possible even-order boundary zero
struct MultiplicityAmbiguityError : Error {
  using Error::Error;
};
// lambda lies on an interval boundary where the closed formulas do not apply
struct BoundaryLambdaError : Error {
  using Error::Error;
};
// threshold search failed to bracket a crossing
struct NotFoundError : Error {
  using Error::Error;
};
struct ParseError : Error {
  using Error::Error;
};

}  // namespace qmz
