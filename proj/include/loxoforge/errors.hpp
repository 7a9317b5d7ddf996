/// @file errors.hpp
/// Error taxonomy for the whole library. Every throwing path uses one of
/// these types so callers (and the CLI exit-code mapping) can distinguish
/// configuration mistakes from numerical failures and I/O problems.

#ifndef LOXOFORGE_ERRORS_HPP
#define LOXOFORGE_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace lox {

/// Base class of all library errors.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// --- configuration-class errors (CLI exit code 2) --------------------------

/// Unknown id passed to the surface catalog.
struct UnknownCatalogId : Error {
  explicit UnknownCatalogId(const std::string& id)
      : Error("unknown catalog id: " + id), id(id) {}
  std::string id;
};

/// Parameters invalid for the requested construction.
struct BadParams : Error {
  using Error::Error;
};

/// Malformed or contradictory configuration (file or flag level).
struct ConfigError : Error {
  using Error::Error;
};

// --- numeric-class errors (CLI exit code 3) ---------------------------------

/// A point left the chart's admissible region (e.g. y<=0 in H2xR).
struct DomainViolation : Error {
  using Error::Error;
};

/// The Killing-field length omega evaluated non-positive: the point sits on
/// (or past) an orbit-space boundary.
struct NonPositiveVolume : Error {
  using Error::Error;
};

/// The loxodrome integrand blew up because omega fell below tolerance.
struct NearSingularOrbit : Error {
  NearSingularOrbit(const std::string& msg, double u) : Error(msg), u(u) {}
  double u;  ///< offending parameter value
};

/// Adaptive quadrature exhausted its recursion depth before reaching the
/// requested tolerance.
struct QuadratureNonConvergent : Error {
  using Error::Error;
};

/// The unit-speed constraint has no real solution at u: |xi1'| exceeds the
/// speed allowed by the quotient metric there.
struct SpeedDeficitNegative : Error {
  SpeedDeficitNegative(const std::string& msg, double u) : Error(msg), u(u) {}
  double u;  ///< parameter where the square-root argument went negative
};

/// The first integral of a constant-curvature profile drifts: the supplied
/// omega does not actually solve the claimed ODE family.
struct InconsistentConstants : Error {
  using Error::Error;
};

/// The declared curvature class disagrees with omega'' + K omega = 0.
struct WrongCurvatureClass : Error {
  using Error::Error;
};

// --- expression-language errors ---------------------------------------------

/// Parse failure; position is a byte offset into the source string.
struct SyntaxError : Error {
  SyntaxError(std::size_t position, const std::string& expected,
              const std::string& got)
      : Error("syntax error at byte " + std::to_string(position) +
              ": expected " + expected + ", got " + got),
        position(position),
        expected(expected) {}
  std::size_t position;
  std::string expected;  ///< human-readable set of acceptable tokens
};

/// Identifier that is neither the variable u, a constant, nor a known function.
struct UnknownIdentifier : Error {
  UnknownIdentifier(std::size_t position, const std::string& name)
      : Error("unknown identifier '" + name + "' at byte " +
              std::to_string(position)),
        position(position),
        name(name) {}
  std::size_t position;
  std::string name;
};

/// Runtime evaluation failure of an expression (division by zero, domain
/// error of a function, or a non-finite intermediate).
struct EvalError : Error {
  enum class Kind { div_by_zero, log_domain, sqrt_domain, non_finite };

  EvalError(Kind kind, std::size_t position)
      : Error(describe(kind) + " at byte " + std::to_string(position)),
        kind(kind),
        position(position) {}

  static std::string describe(Kind k) {
    switch (k) {
      case Kind::div_by_zero: return "division by zero";
      case Kind::log_domain: return "logarithm of a non-positive value";
      case Kind::sqrt_domain: return "square root of a negative value";
      case Kind::non_finite: return "non-finite result";
    }
    return "evaluation error";
  }

  Kind kind;
  std::size_t position;
};

// --- I/O errors (CLI exit code 4) -------------------------------------------

struct IoError : Error {
  using Error::Error;
};

}  // namespace lox

#endif  // LOXOFORGE_ERRORS_HPP
