#pragma once

#include <optional>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "radplap/solver.hpp"
#include "radplap/weights.hpp"

namespace radplap {

enum class Boundary { left, right };

std::string_view to_string(Boundary b);

/// int_{R1}^r rho^{1-p'} and int_r^{R2} rho^{1-p'} (R2 may be inf).
double envelope_left(const ProblemSpec& ps, double r);
double envelope_right(const ProblemSpec& ps, double r);

struct AsymptoticVerdict {
  Boundary boundary = Boundary::left;
  std::pair<double, double> window{0.0, 0.0};
  std::size_t samples = 0;
  double ratio_min = 0.0;
  double ratio_max = 0.0;
  double flux_min = 0.0;
  double flux_max = 0.0;
  double fitted_exponent = 0.0;
  double fit_residual = 0.0;
  std::optional<double> theoretical_exponent;
  bool pass = false;
};

struct SandwichOptions {
  double max_ratio_spread = 10.0;
  double exponent_tol = 0.05;
};

/// A sample of u together with its distance to the boundary it approaches
/// (y = r - R1, y = R2 - r, or y = r at infinity).
struct BoundarySample {
  double y;
  double u;
};

/// Least-squares slope of log u against log y.
struct ExponentFit {
  double exponent;
  double residual;  // root-mean-square deviation of the log-log fit
};

/// Requires at least 8 samples; the `exclude_nearest` samples closest to the
/// boundary (smallest y for finite ends, largest y at infinity) are dropped.
ExponentFit fit_exponent(std::span<const BoundarySample> samples, bool at_infinity,
                         std::size_t exclude_nearest = 2);

/// Exponent of the envelope at the boundary when it is a pure power.
std::optional<double> theoretical_exponent(const ProblemSpec& ps, Boundary b);

/// The (R1 + eta, R1 + 10 eta) window with envelope_left(R1 + eta) equal to
/// 1e-4 max u, capped at the peak of u; mirrored on the right, where at
/// infinity the window is (b, 10 b) with b at most 1e-5 of the truncation
/// radius, or 1e-2 of it when the smaller cap falls below the peak of u.
std::pair<double, double> default_window(const ProblemSpec& ps, const Eigenpair& eig, Boundary b);

/// Compares u with the envelope on the window. Throws std::invalid_argument if
/// the window holds fewer than 8 nodes or u is not positive there.
AsymptoticVerdict sandwich_check(const ProblemSpec& ps, const Eigenpair& eig, Boundary b,
                                 std::optional<std::pair<double, double>> window = std::nullopt,
                                 const SandwichOptions& opts = {});

/// Per-node rows (r, u, envelope, ratio) on a window, for CSV output.
struct EnvelopeRow {
  double r;
  double u;
  double envelope;
  double ratio;
};
std::vector<EnvelopeRow> envelope_table(const ProblemSpec& ps, const Eigenpair& eig, Boundary b,
                                        std::pair<double, double> window);

}  // namespace radplap
