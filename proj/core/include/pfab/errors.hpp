#ifndef PFAB_ERRORS_HPP
#define PFAB_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace pfab {

class Error : public std::runtime_error {
public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Bad user input: malformed config file, unknown key, out-of-range value.
// Maps to exit code 2 in the CLI.
class ConfigError : public Error {
public:
  using Error::Error;
};

// A request that cannot be satisfied: degenerate route, no route within the
// turn budget, infeasible calibration target. Maps to exit code 3.
class InfeasibleError : public Error {
public:
  using Error::Error;
};

class NotFoundError : public Error {
public:
  using Error::Error;
};

class OutOfRangeError : public Error {
public:
  using Error::Error;
};

// Forbidden device or allocator state (e.g. both resonators ON).
class InvalidStateError : public Error {
public:
  using Error::Error;
};

// A structurally broken argument, e.g. a route whose claims do not match its
// waypoints. Distinct from a resource conflict, which is a normal result.
class ValidationError : public Error {
public:
  using Error::Error;
};

class CalibrationError : public InfeasibleError {
public:
  using InfeasibleError::InfeasibleError;
};

// Guard against running an exhaustive oracle on an instance that is too big.
class SizeError : public Error {
public:
  using Error::Error;
};

}  // namespace pfab

#endif
