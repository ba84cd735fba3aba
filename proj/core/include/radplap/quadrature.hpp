#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string_view>

#include "radplap/weights.hpp"

namespace radplap {

enum class Verdict { converged, diverges, inconclusive };

std::string_view to_string(Verdict v);

struct IntegralResult {
  double value = 0.0;  // +inf when the integral diverges
  double abs_error_estimate = 0.0;
  Verdict verdict = Verdict::inconclusive;
  std::size_t evaluations = 0;

  bool converged() const noexcept { return verdict == Verdict::converged; }
};

struct QuadratureOptions {
  /// Target: |value - exact| <= tol * (1 + |value|).
  double tol = 1e-10;
  std::size_t max_evaluations = 1'000'000;
  /// Known behaviour f ~ (x - a)^gamma as x -> a+. Picks a smoothing
  /// substitution, and gamma <= -1 is reported as divergence without sampling.
  std::optional<double> left_exponent;
  /// f ~ (b - x)^gamma as x -> b- for finite b, or f ~ x^gamma as x -> inf.
  std::optional<double> right_exponent;
  /// Partial sums beyond this magnitude are taken as numerical divergence.
  double divergence_cap = 1e12;
};

/// Adaptive Gauss-Kronrod (7/15) quadrature over (a, b), b may be +inf.
/// The integrand is never evaluated at a or b.
IntegralResult integrate(const std::function<double(double)>& f, double a, double b,
                         const QuadratureOptions& opts = {});

/// Integral of a power-log model over radii (a, b) with R1 <= a < b <= R2.
/// Convergence at R1 and at infinity is decided from the exponents; piece
/// integrals use closed forms where elementary and numerical quadrature with
/// exponent hints otherwise.
IntegralResult integrate_exact_powerlog(const WeightModel& f, double a, double b,
                                        const QuadratureOptions& opts = {});

/// Same, but the limits are offsets x = r - R1. Use this near R1.
IntegralResult integrate_powerlog_offsets(const WeightModel& f, double x0, double x1,
                                          const QuadratureOptions& opts = {});

/// Convenience: the value of integrate_powerlog_offsets, +inf on divergence.
double powerlog_integral(const WeightModel& f, double x0, double x1, double tol = 1e-13);

}  // namespace radplap
