#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace ddps {

/// Base class for every error the library reports.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Malformed Matrix Market header or body.
struct ParseError : Error {
  using Error::Error;
};

/// Matrix Market field this library does not handle (complex, pattern).
struct UnsupportedField : Error {
  using Error::Error;
};

struct DimensionMismatch : Error {
  using Error::Error;
};

struct NotSquare : Error {
  using Error::Error;
};

struct InvalidPartCount : Error {
  using Error::Error;
};

/// Partition file with missing ids, out-of-range ids, or wrong length.
struct BadPartVector : Error {
  using Error::Error;
};

/// Diagonal block that could not be factorized (pivot failure, and either
/// no perturbation was allowed or the perturbed retry failed too).
struct SingularBlock : Error {
  std::int64_t block;
  explicit SingularBlock(std::int64_t b)
      : Error("singular diagonal block " + std::to_string(b)), block(b) {}
};

/// Pivot failure in the direct factorization of the reduced system.
struct ReducedSingular : Error {
  using Error::Error;
};

}  // namespace ddps
