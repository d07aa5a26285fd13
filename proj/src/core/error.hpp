#pragma once

#include <stdexcept>
#include <string>

namespace semmap {

// Base for everything this library throws on purpose.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Malformed or inconsistent input: parse failures, shape mismatches,
// out-of-range parameters. CLI exit code 1.
class ValidationError : public Error {
public:
  using Error::Error;
};

// The computation itself cannot produce a result: non-convergence,
// degenerate spectra, undefined distances. CLI exit code 2.
class NumericError : public Error {
public:
  using Error::Error;
};

}  // namespace semmap
