#ifndef LIFTPROJ_ERRORS_HPP_
#define LIFTPROJ_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace liftproj {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DimensionError : Error {
  using Error::Error;
};

struct ParseError : Error {
  using Error::Error;
};

/// A size or enumeration guard was exceeded (lifted variables, subsets, 2^d).
struct GuardExceeded : Error {
  using Error::Error;
};

/// The floating-point SDP engine could not reach a trustworthy verdict.
struct NumericalFailure : Error {
  using Error::Error;
};

struct DomainError : Error {
  using Error::Error;
};

}  // namespace liftproj

#endif  // LIFTPROJ_ERRORS_HPP_
