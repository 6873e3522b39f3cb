#pragma once

#include <stdexcept>
#include <string>

namespace nashlab {

// Error taxonomy shared by all modules. The CLI maps kinds to exit codes:
// Input -> 3, Budget -> 2, everything else -> 1.
enum class ErrorKind {
  Structural,   // dimension mismatch, invalid cone/monoid, base mismatch
  Input,        // unparsable or schema-invalid user input
  Budget,       // a search or stabilization budget was exhausted
  Convergence,  // p-adic series does not converge
  Valuation,    // p divides a denominator
  Precondition, // documented precondition violated (e.g. unsaturated base)
  State,        // operation on an object in the wrong state (e.g. tower not terminated)
  Degenerate,   // degenerate input (too few generators, zero vector, ...)
  Convention,   // a sign/convention invariant failed; indicates a bug
};

class Error : public std::runtime_error {
public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) {
  throw Error(kind, what);
}

} // namespace nashlab
