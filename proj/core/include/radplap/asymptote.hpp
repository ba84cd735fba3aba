#pragma once

#include <stdexcept>

#include "radplap/weights.hpp"

namespace radplap {

/// Tolerance used when comparing exponents against their critical values.
inline constexpr double kExponentTol = 1e-9;

enum class Approach { to_zero, to_infinity };

/// Leading behaviour coef * y^power * L^log_power * LL^loglog_power of a
/// positive function near an endpoint, with L = |log y| and LL = log L.
/// `infinite` marks a function that is identically +inf near the endpoint
/// (for instance an integral that diverges at the far end).
struct Asymptote {
  Approach approach = Approach::to_zero;
  double coef = 1.0;
  double power = 0.0;
  double log_power = 0.0;
  double loglog_power = 0.0;
  bool infinite = false;

  static Asymptote from(const LocalExponents& le, Approach approach);
  static Asymptote constant(double c, Approach approach);
  static Asymptote infinity(Approach approach);

  Asymptote operator*(const Asymptote& other) const;
  Asymptote pow(double e) const;
  /// Multiply by y^k.
  Asymptote times_y_power(double k) const;

  /// +1 if the function blows up, -1 if it tends to zero, 0 for a finite
  /// positive limit.
  int growth_sign() const;
  bool tends_to_zero() const { return growth_sign() < 0; }
  bool bounded() const { return growth_sign() <= 0; }

  /// Whether the integral over a neighbourhood of the endpoint converges.
  bool integrable() const;
  /// The integral from the endpoint to y. Requires integrable().
  Asymptote near_integral() const;
  /// The integral from y to a fixed interior point, or to the other endpoint
  /// when `far_end_finite` says that part converges.
  Asymptote far_integral(bool far_end_finite = true, double limit_value = 1.0) const;
};

/// Raised when the exponent algebra would need a triple-log term.
class UnsupportedAsymptote : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace radplap
