#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

namespace radplap {

/// J_{n+1} <= K eta^n (J_n^{1+delta1} + J_n^{1+delta2}).
struct RecursionParams {
  double K = 1.0;
  double eta = 2.0;
  double delta1 = 1.0;
  double delta2 = 1.0;
  double J0 = 0.25;
  /// When set, log J0 is taken from here and J0 is ignored; thresholds for
  /// small delta1 lie far below the smallest double.
  std::optional<double> log_J0;
  std::size_t n_max = 10000;

  double log_initial() const;

  /// Throws std::invalid_argument unless K > 0, eta > 1, 0 < delta1 <= delta2, J0 >= 0.
  void validate() const;
};

/// The two admissible smallness thresholds for J0:
///   first  = min(1, (2K)^{-1/d1} eta^{-1/d1^2})
///   second = min((2K)^{-1/d1} eta^{-1/d1^2}, (2K)^{-1/d2} eta^{-1/(d1 d2) - (d2-d1)/d2^2})
struct Thresholds {
  double first;
  double second;
};

Thresholds threshold(const RecursionParams& params);
/// Natural logarithms of both thresholds, finite even when the values underflow.
Thresholds log_threshold(const RecursionParams& params);

/// Equality trace of the recursion. Values are kept in linear space while they
/// are representable, so small hand-checkable traces come out exactly, and in
/// log space otherwise.
struct RecursionTrace {
  std::vector<double> J;      // 0 once the value underflows
  std::vector<double> log_J;  // -inf once even the logarithm underflows
  /// First index with J_n <= 1.
  std::optional<std::size_t> n0;
  bool overflow = false;
  /// Simulation stopped early because the sequence reached exact zero in log space.
  bool truncated = false;
};

RecursionTrace simulate(const RecursionParams& params);

/// log of min(1, (2K)^{-1/d1} eta^{-1/d1^2} eta^{-n/d1}).
double log_decay_bound(const RecursionParams& params, std::size_t n);

struct BoundCheck {
  bool precondition_met = false;
  bool holds = false;
  std::optional<std::size_t> first_violation;
  std::optional<std::size_t> n0;
  std::size_t checked = 0;
};

/// Checks J_n against the decay bound for every n0 <= n in the trace (the
/// equality trace by default). A trace that never drops to 1 or overflows
/// counts as a failure.
BoundCheck verify_bound(const RecursionParams& params);
BoundCheck verify_bound(const RecursionParams& params, const std::vector<double>& log_J);

enum class ThresholdChoice { first, second };

struct SweepSummary {
  std::size_t draws = 0;
  std::size_t counterexamples = 0;
  std::size_t missing_n0 = 0;
  std::size_t overflows = 0;
  /// Smallest (bound - log J) margin seen, a sharpness record.
  double min_log_margin = 0.0;
  std::vector<RecursionParams> failures;
};

/// Random draws: K log-uniform in [1e-2, 1e3], eta uniform in (1, 10],
/// delta1 <= delta2 uniform in (0, 3], J0 = 0.99 * threshold.
SweepSummary sweep(std::size_t draws, std::uint64_t seed, ThresholdChoice choice,
                   std::size_t n_max = 10000, unsigned threads = 0);

/// Random sub-equality sequences J_{n+1} = theta_n * RHS with theta_n in [0, 1]
/// started at J0; returns their log values.
std::vector<double> random_subsolution(const RecursionParams& params, std::uint64_t seed);

}  // namespace radplap
