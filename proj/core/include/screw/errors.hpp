#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace screw {

/// Base class of every error thrown by the library.
class error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An argument lies outside the region where an operation is defined
/// (for example Re(s) <= 1 + margin for a Dirichlet series).
class domain_error : public error {
 public:
  using error::error;
};

/// The argument hits a pole of the function being evaluated.
class pole_error : public domain_error {
 public:
  using domain_error::domain_error;
};

/// A documented precondition of an operation was violated.
class precondition_error : public error {
 public:
  using error::error;
};

/// A request needs more sieved coefficients than the configured budget.
class budget_error : public error {
 public:
  budget_error(const std::string& what, double max_admissible)
      : error(what), max_admissible_(max_admissible) {}

  /// Largest admissible value of the quantity that overflowed the budget
  /// (a coefficient index or a t value, depending on the thrower).
  double max_admissible() const noexcept { return max_admissible_; }

 private:
  double max_admissible_;
};

/// A series, quadrature or search failed to reach the requested tolerance.
class convergence_error : public error {
 public:
  using error::error;
};

/// Malformed input file or document; carries the 1-based line number when known.
class parse_error : public error {
 public:
  parse_error(const std::string& what, std::size_t line = 0)
      : error(line ? what + " (line " + std::to_string(line) + ")" : what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace screw
