#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace dioph {

// Base for every failure mode the library reports deliberately.
// The CLI maps the concrete types onto exit codes.
struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Malformed input grammar (scalars, norms, configs).
struct ParseError : Error {
  using Error::Error;
};

// A strict comparison could not be decided at the precision cap.
struct PrecisionExhausted : Error {
  using Error::Error;
};

// x is exactly k + 1/2; distance to the nearest integer is ambiguous.
struct HalfIntegerTie : Error {
  using Error::Error;
};

// Two integer points attain provably equal gauge at an optimum.
struct TieAtOptimum : Error {
  using Error::Error;
};

// A linear form vanished exactly: the target is rationally dependent.
// `witness` is the nonzero integer vector with witness . (1, alpha) = 0.
struct RationalDependence : Error {
  std::vector<mpz_class> witness;
  RationalDependence(const std::string& msg, std::vector<mpz_class> w)
      : Error(msg), witness(std::move(w)) {}
};

// Candidate budget exhausted in a search (steer).
struct SearchExhausted : Error {
  using Error::Error;
};

// A steering target does not illuminate the required boundary point.
struct IlluminationViolated : Error {
  using Error::Error;
};

// psi decreases too slowly for the schedule: a window failed to nest.
struct AdmissibilityFailure : Error {
  using Error::Error;
};

// Denominator size cap exceeded while deepening a certificate.
struct DepthOverflow : Error {
  using Error::Error;
};

// Requested T (or window) outside the certified horizon.
struct HorizonError : Error {
  using Error::Error;
};

struct PreconditionViolation : Error {
  using Error::Error;
};

}  // namespace dioph
