#include "radplap/degiorgi.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

#include "radplap/parallel.hpp"

namespace radplap {
namespace {

constexpr double kInfinityPos = std::numeric_limits<double>::infinity();
constexpr double kNegInf = -kInfinityPos;
const double kLogMax = std::log(DBL_MAX);
constexpr double kBoundTol = 1e-12;

double log_sum_exp(double a, double b) {
  const double hi = std::max(a, b);
  const double lo = std::min(a, b);
  if (hi == kNegInf) return kNegInf;
  return hi + std::log1p(std::exp(lo - hi));
}

// Uniform in (0, 1] from the top 53 bits, identical on every platform.
double uniform01(std::mt19937_64& rng) {
  return (static_cast<double>(rng() >> 11) + 1.0) * 0x1.0p-53;
}

double log_X(const RecursionParams& p) {
  return -std::log(2.0 * p.K) / p.delta1 - std::log(p.eta) / (p.delta1 * p.delta1);
}

double log_Y(const RecursionParams& p) {
  const double d1 = p.delta1;
  const double d2 = p.delta2;
  return -std::log(2.0 * p.K) / d2 - std::log(p.eta) * (1.0 / (d1 * d2) + (d2 - d1) / (d2 * d2));
}

RecursionParams draw(std::mt19937_64& rng, std::size_t n_max) {
  RecursionParams p;
  p.K = std::pow(10.0, -2.0 + 5.0 * uniform01(rng));
  p.eta = 1.0 + 9.0 * uniform01(rng);
  double a = 3.0 * uniform01(rng);
  double b = 3.0 * uniform01(rng);
  if (a > b) std::swap(a, b);
  p.delta1 = a;
  p.delta2 = b;
  p.n_max = n_max;
  return p;
}

}  // namespace

void RecursionParams::validate() const {
  if (!(K > 0.0) || !std::isfinite(K)) throw std::invalid_argument("K must be positive");
  if (!(eta > 1.0) || !std::isfinite(eta)) throw std::invalid_argument("eta must exceed 1");
  if (!(delta1 > 0.0) || !(delta2 >= delta1) || !std::isfinite(delta2)) {
    throw std::invalid_argument("need 0 < delta1 <= delta2");
  }
  if (log_J0) {
    if (std::isnan(*log_J0) || *log_J0 == kInfinityPos) {
      throw std::invalid_argument("log J0 must be below +inf");
    }
  } else if (!(J0 >= 0.0) || !std::isfinite(J0)) {
    throw std::invalid_argument("J0 must be finite and >= 0");
  }
}

double RecursionParams::log_initial() const {
  if (log_J0) return *log_J0;
  return J0 > 0.0 ? std::log(J0) : kNegInf;
}

Thresholds log_threshold(const RecursionParams& p) {
  p.validate();
  return Thresholds{std::min(0.0, log_X(p)), std::min(log_X(p), log_Y(p))};
}

Thresholds threshold(const RecursionParams& p) {
  p.validate();
  const double X = std::exp(log_X(p));
  const double Y = std::exp(log_Y(p));
  return Thresholds{std::min(1.0, X), std::min(X, Y)};
}

double log_decay_bound(const RecursionParams& p, std::size_t n) {
  return std::min(0.0, log_X(p) - static_cast<double>(n) * std::log(p.eta) / p.delta1);
}

RecursionTrace simulate(const RecursionParams& p) {
  p.validate();
  RecursionTrace tr;
  double lJ = p.log_initial();
  double J = std::exp(lJ);
  if (!p.log_J0) J = p.J0;
  const double lK = std::log(p.K);
  const double leta = std::log(p.eta);
  tr.J.push_back(J);
  tr.log_J.push_back(lJ);
  for (std::size_t n = 0; n < p.n_max; ++n) {
    double next = 0.0;
    double lnext;
    bool linear = false;
    if (J >= DBL_MIN && std::isfinite(J)) {
      next = p.K * std::pow(p.eta, static_cast<double>(n)) *
             (std::pow(J, 1.0 + p.delta1) + std::pow(J, 1.0 + p.delta2));
      linear = std::isfinite(next) && next >= DBL_MIN;
    }
    if (linear) {
      lnext = std::log(next);
    } else {
      const double base = lK + static_cast<double>(n) * leta;
      lnext = base + log_sum_exp((1.0 + p.delta1) * lJ, (1.0 + p.delta2) * lJ);
      next = std::exp(lnext);
    }
    if (std::isnan(lnext) || lnext > kLogMax) {
      tr.overflow = true;
      break;
    }
    J = next;
    lJ = lnext;
    tr.J.push_back(J);
    tr.log_J.push_back(lJ);
    if (lJ == kNegInf) {
      tr.truncated = true;
      break;
    }
  }
  for (std::size_t n = 0; n < tr.log_J.size(); ++n) {
    if (tr.log_J[n] <= 0.0) {
      tr.n0 = n;
      break;
    }
  }
  return tr;
}

BoundCheck verify_bound(const RecursionParams& p, const std::vector<double>& log_J) {
  BoundCheck bc;
  const Thresholds thr = log_threshold(p);
  const double lj0 = p.log_initial();
  bc.precondition_met = lj0 <= thr.first + kBoundTol || lj0 <= thr.second + kBoundTol;
  for (std::size_t n = 0; n < log_J.size(); ++n) {
    if (log_J[n] <= 0.0) {
      bc.n0 = n;
      break;
    }
  }
  if (!bc.n0) {
    bc.holds = false;
    return bc;
  }
  bc.holds = true;
  for (std::size_t n = *bc.n0; n < log_J.size(); ++n) {
    ++bc.checked;
    if (log_J[n] > log_decay_bound(p, n) + kBoundTol) {
      bc.holds = false;
      bc.first_violation = n;
      break;
    }
  }
  return bc;
}

BoundCheck verify_bound(const RecursionParams& p) {
  const RecursionTrace tr = simulate(p);
  BoundCheck bc = verify_bound(p, tr.log_J);
  if (tr.overflow && bc.holds) {
    bc.holds = false;
    bc.first_violation = tr.log_J.size();
  }
  return bc;
}

SweepSummary sweep(std::size_t draws, std::uint64_t seed, ThresholdChoice choice,
                   std::size_t n_max, unsigned threads) {
  std::mt19937_64 rng(seed);
  std::vector<RecursionParams> params(draws);
  for (auto& p : params) {
    p = draw(rng, n_max);
    const Thresholds thr = log_threshold(p);
    p.log_J0 = std::log(0.99) + (choice == ThresholdChoice::first ? thr.first : thr.second);
    p.J0 = std::exp(*p.log_J0);
  }
  std::vector<BoundCheck> checks(draws);
  std::vector<RecursionTrace> traces(draws);
  parallel_for(
      draws,
      [&](std::size_t i) {
        traces[i] = simulate(params[i]);
        checks[i] = verify_bound(params[i], traces[i].log_J);
        if (traces[i].overflow && checks[i].holds) {
          checks[i].holds = false;
          checks[i].first_violation = traces[i].log_J.size();
        }
      },
      threads);
  SweepSummary s;
  s.draws = draws;
  s.min_log_margin = kInfinityPos;
  for (std::size_t i = 0; i < draws; ++i) {
    if (!checks[i].n0) ++s.missing_n0;
    if (traces[i].overflow) ++s.overflows;
    if (!checks[i].holds) {
      ++s.counterexamples;
      s.failures.push_back(params[i]);
    }
    for (std::size_t n = checks[i].n0.value_or(0); n < traces[i].log_J.size(); ++n) {
      const double lj = traces[i].log_J[n];
      if (lj == kNegInf) break;
      s.min_log_margin = std::min(s.min_log_margin, log_decay_bound(params[i], n) - lj);
    }
  }
  return s;
}

std::vector<double> random_subsolution(const RecursionParams& p, std::uint64_t seed) {
  p.validate();
  std::mt19937_64 rng(seed);
  std::vector<double> out;
  double lJ = p.log_initial();
  out.push_back(lJ);
  const double lK = std::log(p.K);
  const double leta = std::log(p.eta);
  for (std::size_t n = 0; n < p.n_max; ++n) {
    const double rhs = lK + static_cast<double>(n) * leta +
                       log_sum_exp((1.0 + p.delta1) * lJ, (1.0 + p.delta2) * lJ);
    lJ = std::log(uniform01(rng)) + rhs;
    if (std::isnan(lJ) || lJ > kLogMax) break;
    out.push_back(lJ);
    if (lJ == kNegInf) break;
  }
  return out;
}

}  // namespace radplap
