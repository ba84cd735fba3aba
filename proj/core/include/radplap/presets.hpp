#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "radplap/weights.hpp"

namespace radplap {

/// Degenerate weight on (1, inf): v = (r-1)^alpha, w = (r-1)^delta r^{tail-delta},
/// so w behaves like (r-1)^delta at 1 and like r^tail at infinity.
struct DegenerateExteriorParams {
  double p = 2.0;
  int N = 3;
  double alpha = 0.5;
  double delta = -0.25;
  double tail = -4.0;
};
ProblemSpec degenerate_exterior(const DegenerateExteriorParams& params = {});

/// Singular weight on (1, inf): v = (r-1)^alpha with p - N < alpha < 0, w = r^tail.
struct SingularExteriorParams {
  double p = 2.0;
  int N = 3;
  double alpha = -0.5;
  double tail = -4.0;
};
ProblemSpec singular_exterior(const SingularExteriorParams& params = {});

/// v = 1, w = (r-1)^beta on (1, 2) and w = 2^{-tail} r^tail from 2 on, which
/// keeps w continuous at 2.
struct W1WithoutAdsParams {
  double p = 2.0;
  int N = 3;
  double beta = -1.5;
  double tail = -4.0;
};
ProblemSpec w1_without_ads(const W1WithoutAdsParams& params = {});

/// Three-piece weights on (1, 2], (2, 3], (3, inf): powers of r - 1, a constant
/// band, then powers of r.
struct W1WithoutOkParams {
  double p = 2.0;
  int N = 3;
  double alpha = 0.5;
  double beta = 1.0;
  double alpha1 = -1.0;
  double beta1 = -3.0;
};
ProblemSpec w1_without_ok(const W1WithoutOkParams& params = {});

/// Uniform draw with 1 < p < N, alpha < p - 1, beta >= 0,
/// alpha - p < alpha1 <= -1 and -N <= beta1 < -p.
W1WithoutOkParams random_w1_without_ok(std::uint64_t seed);

/// v = 1, w = r^{-p-extra} on (1, inf). extra = 0 is the borderline tail.
ProblemSpec critical_tail(double p, int N, double extra);

/// v = w = 1 on (1, 2) in dimension N.
ProblemSpec annulus(int N, double p = 2.0);

/// Names accepted by preset_by_name, in a fixed order.
std::vector<std::string> preset_names();
/// One line describing the concrete parameters behind a preset.
std::string preset_description(std::string_view name);
/// Throws std::invalid_argument for an unknown name.
ProblemSpec preset_by_name(std::string_view name);

}  // namespace radplap
