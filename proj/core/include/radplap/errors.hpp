#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>

namespace radplap {

/// Evaluation point outside the open interval on which a weight is defined.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Malformed or inconsistent problem description. `field()` names the offending
/// entry as a JSON-pointer style path ("/v/2/hi") when one is known.
class SpecError : public std::runtime_error {
 public:
  SpecError(std::string field, const std::string& what)
      : std::runtime_error(field.empty() ? what : field + ": " + what), field_(std::move(field)) {}

  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

/// Numerical failure inside the eigenvalue solvers.
class SolverError : public std::runtime_error {
 public:
  explicit SolverError(const std::string& what,
                       double location = std::numeric_limits<double>::quiet_NaN())
      : std::runtime_error(what), location_(location) {}

  /// Radius at which the failure was detected, NaN when not tied to a point.
  double location() const noexcept { return location_; }

 private:
  double location_;
};

}  // namespace radplap
