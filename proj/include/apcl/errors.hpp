#pragma once

#include <stdexcept>
#include <string>

namespace apcl {

// All library failures surface as one of these, so callers can map them to
// exit codes without string matching.

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Two objects built over different real bases were combined.
struct BaseMismatchError : Error {
  using Error::Error;
};

// A frequency is not representable on the requested lattice / group.
struct LatticeError : Error {
  using Error::Error;
};

// A frequency lies outside the rational span of a basis.
struct SpanError : Error {
  using Error::Error;
};

// A value fell outside the domain a piecewise flux is defined on.
struct DomainError : Error {
  using Error::Error;
};

// Solver state left its admissible range (maximum principle violation).
struct RangeError : Error {
  using Error::Error;
};

// A time step would violate the CFL bound.
struct CflError : Error {
  using Error::Error;
};

// Bad grid / quadrature request (non-positive sizes, cache overflow, ...).
struct GridError : Error {
  using Error::Error;
};

// Malformed configuration or input document.
struct ConfigError : Error {
  using Error::Error;
};

struct IoError : Error {
  using Error::Error;
};

}  // namespace apcl
