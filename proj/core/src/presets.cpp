#include "radplap/presets.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace radplap {
namespace {

double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace

ProblemSpec degenerate_exterior(const DegenerateExteriorParams& q) {
  WeightModel v(1.0, {PowerLogPiece{1.0, kInfinity, 1.0, q.alpha, 0.0, 0.0}});
  WeightModel w(1.0, {PowerLogPiece{1.0, kInfinity, 1.0, q.delta, q.tail - q.delta, 0.0}});
  return ProblemSpec(q.N, q.p, 1.0, kInfinity, std::move(v), std::move(w));
}

ProblemSpec singular_exterior(const SingularExteriorParams& q) {
  WeightModel v(1.0, {PowerLogPiece{1.0, kInfinity, 1.0, q.alpha, 0.0, 0.0}});
  WeightModel w(1.0, {PowerLogPiece{1.0, kInfinity, 1.0, 0.0, q.tail, 0.0}});
  return ProblemSpec(q.N, q.p, 1.0, kInfinity, std::move(v), std::move(w));
}

ProblemSpec w1_without_ads(const W1WithoutAdsParams& q) {
  WeightModel v = WeightModel::constant(1.0, kInfinity);
  WeightModel w(1.0, {PowerLogPiece{1.0, 2.0, 1.0, q.beta, 0.0, 0.0},
                      PowerLogPiece{2.0, kInfinity, std::pow(2.0, -q.tail), 0.0, q.tail, 0.0}});
  return ProblemSpec(q.N, q.p, 1.0, kInfinity, std::move(v), std::move(w));
}

ProblemSpec w1_without_ok(const W1WithoutOkParams& q) {
  const double top_v = std::pow(3.0, q.beta);
  const double bottom_w = std::pow(3.0, q.beta1);
  WeightModel v(1.0, {PowerLogPiece{1.0, 2.0, 1.0, q.alpha, 0.0, 0.0},
                      PowerLogPiece::band(2.0, 3.0, 1.0, top_v),
                      PowerLogPiece{3.0, kInfinity, 1.0, 0.0, q.beta, 0.0}});
  WeightModel w(1.0, {PowerLogPiece{1.0, 2.0, 1.0, q.alpha1, 0.0, 0.0},
                      PowerLogPiece::band(2.0, 3.0, bottom_w, 1.0),
                      PowerLogPiece{3.0, kInfinity, 1.0, 0.0, q.beta1, 0.0}});
  return ProblemSpec(q.N, q.p, 1.0, kInfinity, std::move(v), std::move(w));
}

W1WithoutOkParams random_w1_without_ok(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  W1WithoutOkParams q;
  q.N = 3 + static_cast<int>(rng() % 3);
  // Keep every strict inequality a visible distance away from equality.
  q.p = 1.2 + (q.N - 1.4) * uniform01(rng);
  q.alpha = -1.0 + 0.95 * q.p * uniform01(rng);
  q.beta = 2.0 * uniform01(rng);
  q.alpha1 = -1.0 - 0.95 * (q.p - 1.0 - q.alpha) * uniform01(rng);
  q.beta1 = -q.N + 0.95 * (q.N - q.p) * uniform01(rng);
  return q;
}

ProblemSpec critical_tail(double p, int N, double extra) {
  return ProblemSpec(N, p, 1.0, kInfinity, WeightModel::constant(1.0, kInfinity),
                     WeightModel::power_log(1.0, kInfinity, 1.0, 0.0, -p - extra));
}

ProblemSpec annulus(int N, double p) {
  return ProblemSpec(N, p, 1.0, 2.0, WeightModel::constant(1.0, 2.0),
                     WeightModel::constant(1.0, 2.0));
}

std::vector<std::string> preset_names() {
  return {"annulus-trivial", "annulus-n3", "ex61", "ex62", "rmk22", "rmk23", "critical-tail"};
}

std::string preset_description(std::string_view name) {
  if (name == "annulus-trivial") return "N=1, p=2, (1,2), v=w=1";
  if (name == "annulus-n3") return "N=3, p=2, (1,2), v=w=1";
  if (name == "ex61") return "N=3, p=2, (1,inf), v=(r-1)^0.5, w=(r-1)^-0.25 r^-3.75";
  if (name == "ex62") return "N=3, p=2, (1,inf), v=(r-1)^-0.5, w=r^-4";
  if (name == "rmk22") return "N=3, p=2, (1,inf), v=1, w=(r-1)^-1.5 on (1,2), 16 r^-4 beyond";
  if (name == "rmk23") {
    return "N=3, p=2, (1,inf), alpha=0.5, beta=1, alpha1=-1, beta1=-3 on (1,2], band (2,3], (3,inf)";
  }
  if (name == "critical-tail") return "N=3, p=2, (1,inf), v=1, w=r^-2";
  throw std::invalid_argument("unknown preset '" + std::string(name) + "'");
}

ProblemSpec preset_by_name(std::string_view name) {
  if (name == "annulus-trivial") return annulus(1);
  if (name == "annulus-n3") return annulus(3);
  if (name == "ex61") return degenerate_exterior();
  if (name == "ex62") return singular_exterior();
  if (name == "rmk22") return w1_without_ads();
  if (name == "rmk23") return w1_without_ok();
  if (name == "critical-tail") return critical_tail(2.0, 3, 0.0);
  throw std::invalid_argument("unknown preset '" + std::string(name) + "'");
}

}  // namespace radplap
