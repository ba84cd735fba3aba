#include "radplap/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>

#include "radplap/asymptote.hpp"
#include "radplap/mesh.hpp"
#include "radplap/quadrature.hpp"

namespace radplap {
namespace {

constexpr double kWindowDrop = 1e-4;
constexpr double kTailMargin = 1e-5;
constexpr double kShortTailMargin = 1e-2;

double boundary_distance(const ProblemSpec& ps, const Mesh& m, std::size_t i, Boundary b) {
  if (b == Boundary::left) return m.offset(i);
  if (ps.exterior()) return m.radius(i);
  return (ps.R2() - ps.R1()) - m.offset(i);
}

double envelope_at_node(const ProblemSpec& ps, const Mesh& m, std::size_t i, Boundary b) {
  return b == Boundary::left ? envelope_left_at(ps, m.offset(i)) : envelope_right_at(ps, m.offset(i));
}

// Nodes whose radius lies in the closed window; on the left the comparison is
// made in offsets to keep precision.
std::vector<std::size_t> nodes_in(const ProblemSpec& ps, const Mesh& m, Boundary b,
                                  std::pair<double, double> w) {
  std::vector<std::size_t> out;
  const double tol = 1e-12;
  for (std::size_t i = 0; i < m.size(); ++i) {
    bool in;
    if (b == Boundary::left) {
      const double x = m.offset(i);
      in = x >= (w.first - ps.R1()) * (1 - tol) && x <= (w.second - ps.R1()) * (1 + tol);
    } else {
      const double r = m.radius(i);
      in = r >= w.first * (1 - tol) && r <= w.second * (1 + tol);
    }
    if (in) out.push_back(i);
  }
  return out;
}

double geometric_bisect(const std::function<double(double)>& f, double target, double lo, double hi) {
  // f decreasing in its argument on [lo, hi]; returns the crossing.
  for (int i = 0; i < 200 && hi / lo > 1.0 + 1e-12; ++i) {
    const double mid = std::sqrt(lo * hi);
    (f(mid) > target ? lo : hi) = mid;
  }
  return std::sqrt(lo * hi);
}

}  // namespace

std::string_view to_string(Boundary b) { return b == Boundary::left ? "left" : "right"; }

double envelope_left(const ProblemSpec& ps, double r) {
  if (!(r > ps.R1()) || !(r < ps.R2())) throw std::invalid_argument("r outside (R1, R2)");
  return envelope_left_at(ps, r - ps.R1());
}

double envelope_right(const ProblemSpec& ps, double r) {
  if (!(r > ps.R1()) || !(r < ps.R2())) throw std::invalid_argument("r outside (R1, R2)");
  return envelope_right_at(ps, r - ps.R1());
}

ExponentFit fit_exponent(std::span<const BoundarySample> samples, bool at_infinity,
                         std::size_t exclude_nearest) {
  if (samples.size() < 8) throw std::invalid_argument("exponent fit needs at least 8 samples");
  std::vector<BoundarySample> s(samples.begin(), samples.end());
  std::sort(s.begin(), s.end(), [](const auto& a, const auto& b) { return a.y < b.y; });
  if (at_infinity) {
    s.resize(s.size() - exclude_nearest);
  } else {
    s.erase(s.begin(), s.begin() + static_cast<std::ptrdiff_t>(exclude_nearest));
  }
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (const auto& b : s) {
    if (!(b.u > 0.0) || !(b.y > 0.0)) throw std::invalid_argument("exponent fit needs positive samples");
    const double lx = std::log(b.y);
    const double ly = std::log(b.u);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  const double n = static_cast<double>(s.size());
  const double den = n * sxx - sx * sx;
  if (!(den > 0.0)) throw std::invalid_argument("exponent fit needs distinct abscissae");
  const double slope = (n * sxy - sx * sy) / den;
  const double icpt = (sy - slope * sx) / n;
  double ss = 0.0;
  for (const auto& b : s) {
    const double d = std::log(b.u) - (icpt + slope * std::log(b.y));
    ss += d * d;
  }
  return ExponentFit{slope, std::sqrt(ss / n)};
}

std::optional<double> theoretical_exponent(const ProblemSpec& ps, Boundary b) {
  const WeightModel& rc = ps.rho_conj_model();
  Asymptote a;
  if (b == Boundary::left) {
    a = Asymptote::from(rc.local_exponents(Endpoint::left_R1), Approach::to_zero);
  } else if (ps.exterior()) {
    a = Asymptote::from(rc.local_exponents(Endpoint::infinity), Approach::to_infinity);
  } else {
    a = Asymptote::from(rc.local_exponents(Endpoint::right_R2_finite), Approach::to_zero);
  }
  if (!a.integrable()) return std::nullopt;
  const Asymptote env = a.near_integral();
  if (env.log_power != 0.0 || env.loglog_power != 0.0) return std::nullopt;
  return env.power;
}

std::pair<double, double> default_window(const ProblemSpec& ps, const Eigenpair& eig, Boundary b) {
  const Mesh& m = eig.mesh;
  const std::size_t peak =
      static_cast<std::size_t>(std::max_element(eig.u.begin(), eig.u.end()) - eig.u.begin());
  const double xp = m.offset(peak);
  const double target = kWindowDrop * eig.u[peak];
  if (b == Boundary::left) {
    // envelope_left grows with x; negate it for the decreasing bisection.
    auto f = [&](double x) { return -envelope_left_at(ps, x); };
    const double eta = geometric_bisect(f, -target, 1e-300, xp);
    return {ps.R1() + eta, ps.R1() + 10.0 * eta};
  }
  if (ps.exterior()) {
    const double rp = m.radius(peak);
    auto f = [&](double r) { return envelope_right_at(ps, r - ps.R1()); };
    double bnd = geometric_bisect(f, target, rp, 1e300);
    // Dirichlet truncation at R distorts u by about (r / R)^{-exponent} near r,
    // so the window stays far below R; a modest R falls back to R / 100.
    double cap = kTailMargin * m.r_end();
    if (cap < rp) cap = kShortTailMargin * m.r_end();
    if (cap < rp) {
      throw std::invalid_argument("truncation radius " + std::to_string(m.r_end()) +
                                  " leaves no tail window beyond the peak of u");
    }
    bnd = std::min(bnd, cap);
    return {bnd, 10.0 * bnd};
  }
  // Offsets closer to R2 than this are not representable relative to L.
  const double L = ps.R2() - ps.R1();
  const double d_min = 1e-13 * L;
  auto f = [&](double d) { return -powerlog_integral(ps.rho_conj_model(), L - d, L, 1e-13); };
  const double d = f(d_min) <= -target ? d_min : geometric_bisect(f, -target, d_min, L - xp);
  return {ps.R2() - 10.0 * d, ps.R2() - d};
}

AsymptoticVerdict sandwich_check(const ProblemSpec& ps, const Eigenpair& eig, Boundary b,
                                 std::optional<std::pair<double, double>> window,
                                 const SandwichOptions& opts) {
  const auto w = window.value_or(default_window(ps, eig, b));
  const Mesh& m = eig.mesh;
  const auto idx = nodes_in(ps, m, b, w);
  if (idx.size() < 8) {
    throw std::invalid_argument("window holds " + std::to_string(idx.size()) +
                                " nodes; at least 8 are needed");
  }
  AsymptoticVerdict v;
  v.boundary = b;
  v.window = w;
  v.samples = idx.size();
  v.ratio_min = kInfinity;
  v.flux_min = kInfinity;
  std::vector<BoundarySample> samples;
  for (std::size_t i : idx) {
    const double u = eig.u[i];
    if (!(u > 0.0)) throw std::invalid_argument("window contains a zero of u");
    const double ratio = u / envelope_at_node(ps, m, i, b);
    v.ratio_min = std::min(v.ratio_min, ratio);
    v.ratio_max = std::max(v.ratio_max, ratio);
    const double g = std::abs(eig.flux[i]);
    v.flux_min = std::min(v.flux_min, g);
    v.flux_max = std::max(v.flux_max, g);
    samples.push_back({boundary_distance(ps, m, i, b), u});
  }
  const bool at_inf = b == Boundary::right && ps.exterior();
  const auto fit = fit_exponent(samples, at_inf);
  v.fitted_exponent = fit.exponent;
  v.fit_residual = fit.residual;
  v.theoretical_exponent = theoretical_exponent(ps, b);
  v.pass = v.ratio_max / v.ratio_min <= opts.max_ratio_spread &&
           (!v.theoretical_exponent ||
            std::abs(v.fitted_exponent - *v.theoretical_exponent) <= opts.exponent_tol);
  return v;
}

std::vector<EnvelopeRow> envelope_table(const ProblemSpec& ps, const Eigenpair& eig, Boundary b,
                                        std::pair<double, double> window) {
  std::vector<EnvelopeRow> rows;
  for (std::size_t i : nodes_in(ps, eig.mesh, b, window)) {
    const double env = envelope_at_node(ps, eig.mesh, i, b);
    rows.push_back({eig.mesh.radius(i), eig.u[i], env, eig.u[i] / env});
  }
  return rows;
}

}  // namespace radplap
