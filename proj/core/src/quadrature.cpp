#include "radplap/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <queue>
#include <vector>

#include "radplap/asymptote.hpp"
#include "radplap/errors.hpp"

namespace radplap {
namespace {

constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kMaxStretch = 20.0;

struct Segment {
  double lo;
  double hi;
  double value;
  double error;
  int part;
  bool operator<(const Segment& o) const { return error < o.error; }
};

using Mapped = std::function<double(double)>;

// One Gauss-Kronrod 7/15 panel with the QUADPACK error heuristic.
Segment gk15(const Mapped& g, double lo, double hi, int part) {
  const double c = 0.5 * (lo + hi);
  const double h = 0.5 * (hi - lo);
  const double fc = g(c);
  double resk = fc * kWgk[7];
  double resg = fc * kWg[3];
  double resabs = std::abs(resk);
  std::array<double, 7> f1{};
  std::array<double, 7> f2{};
  for (int j = 0; j < 7; ++j) {
    const double dx = h * kXgk[j];
    f1[j] = g(c - dx);
    f2[j] = g(c + dx);
    resk += kWgk[j] * (f1[j] + f2[j]);
    resabs += kWgk[j] * (std::abs(f1[j]) + std::abs(f2[j]));
    if (j % 2 == 1) resg += kWg[j / 2] * (f1[j] + f2[j]);
  }
  const double mean = 0.5 * resk;
  double resasc = kWgk[7] * std::abs(fc - mean);
  for (int j = 0; j < 7; ++j) {
    resasc += kWgk[j] * (std::abs(f1[j] - mean) + std::abs(f2[j] - mean));
  }
  resk *= h;
  resg *= h;
  resabs *= std::abs(h);
  resasc *= std::abs(h);
  double err = std::abs(resk - resg);
  if (resasc != 0.0 && err != 0.0) {
    err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  }
  if (resabs > std::numeric_limits<double>::min() / (50.0 * kEps)) {
    err = std::max(50.0 * kEps * resabs, err);
  }
  if (!std::isfinite(resk)) err = std::numeric_limits<double>::infinity();
  return Segment{lo, hi, resk, err, part};
}

// Exponent m of the substitution t^m that makes g ~ t^(integer) for f ~ t^gamma.
double stretch_for(double gamma_plus_one) {
  const double k = std::max(1.0, std::ceil(gamma_plus_one - 1e-9));
  return std::min(kMaxStretch, k / gamma_plus_one);
}

IntegralResult diverged(std::size_t evals = 0) {
  return IntegralResult{kInfinity, 0.0, Verdict::diverges, evals};
}

}  // namespace

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::converged: return "converged";
    case Verdict::diverges: return "diverges";
    case Verdict::inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

IntegralResult integrate(const std::function<double(double)>& f, double a, double b,
                         const QuadratureOptions& opts) {
  if (!(b > a) || std::isnan(a) || !std::isfinite(a)) {
    throw std::invalid_argument("integrate: need finite a < b");
  }
  const bool infinite_b = b == kInfinity;
  if (opts.left_exponent && *opts.left_exponent <= -1.0 + kExponentTol) return diverged();
  if (opts.right_exponent) {
    if (infinite_b && *opts.right_exponent >= -1.0 - kExponentTol) return diverged();
    if (!infinite_b && *opts.right_exponent <= -1.0 + kExponentTol) return diverged();
  }

  std::size_t evals = 0;
  std::vector<Mapped> parts;

  const double mL = opts.left_exponent ? stretch_for(*opts.left_exponent + 1.0) : 1.0;
  if (!infinite_b) {
    const double mR = opts.right_exponent ? stretch_for(*opts.right_exponent + 1.0) : 1.0;
    const double m = a + 0.5 * (b - a);
    const double wl = m - a;
    const double wr = b - m;
    parts.push_back([&, mL, wl](double t) {
      ++evals;
      const double tm = std::pow(t, mL - 1.0);
      return f(a + wl * tm * t) * wl * mL * tm;
    });
    parts.push_back([&, mR, wr](double t) {
      ++evals;
      const double tm = std::pow(t, mR - 1.0);
      return f(b - wr * tm * t) * wr * mR * tm;
    });
  } else {
    const double m = a + std::max(1.0, std::abs(a));
    const double wl = m - a;
    const double mT = opts.right_exponent ? stretch_for(-*opts.right_exponent - 1.0) : 1.0;
    const double s = std::max(std::abs(m), 1.0);
    parts.push_back([&, mL, wl](double t) {
      ++evals;
      const double tm = std::pow(t, mL - 1.0);
      return f(a + wl * tm * t) * wl * mL * tm;
    });
    parts.push_back([&, m, s, mT](double t) {
      ++evals;
      const double grow = std::pow(t, -mT);
      const double r = m + s * (grow - 1.0);
      if (!std::isfinite(r)) return 0.0;
      const double fr = f(r);
      if (fr == 0.0) return 0.0;
      return fr * s * grow * mT / t;
    });
  }

  std::priority_queue<Segment> queue;
  std::vector<Segment> frozen;
  double total = 0.0;
  double total_err = 0.0;
  for (int p = 0; p < static_cast<int>(parts.size()); ++p) {
    for (int k = 0; k < 4; ++k) {
      Segment s = gk15(parts[p], 0.25 * k, 0.25 * (k + 1), p);
      total += s.value;
      total_err += s.error;
      queue.push(s);
    }
  }

  auto recompute = [&]() {
    total = 0.0;
    total_err = 0.0;
    auto copy = queue;
    while (!copy.empty()) {
      total += copy.top().value;
      total_err += copy.top().error;
      copy.pop();
    }
    for (const auto& s : frozen) {
      total += s.value;
      total_err += s.error;
    }
  };

  std::size_t since_recompute = 0;
  while (true) {
    if (!std::isfinite(total) || std::abs(total) > opts.divergence_cap) return diverged(evals);
    if (total_err <= opts.tol * (1.0 + std::abs(total))) {
      recompute();
      if (total_err <= opts.tol * (1.0 + std::abs(total))) {
        return IntegralResult{total, total_err, Verdict::converged, evals};
      }
    }
    if (evals >= opts.max_evaluations || queue.empty()) break;
    Segment worst = queue.top();
    queue.pop();
    const double mid = 0.5 * (worst.lo + worst.hi);
    if (!(mid > worst.lo && mid < worst.hi) ||
        worst.hi - worst.lo < 64.0 * kEps * std::max(std::abs(mid), 1e-300)) {
      frozen.push_back(worst);
      continue;
    }
    Segment s1 = gk15(parts[worst.part], worst.lo, mid, worst.part);
    Segment s2 = gk15(parts[worst.part], mid, worst.hi, worst.part);
    total += s1.value + s2.value - worst.value;
    total_err += s1.error + s2.error - worst.error;
    queue.push(s1);
    queue.push(s2);
    if (++since_recompute == 200) {
      since_recompute = 0;
      recompute();
    }
  }
  recompute();
  if (!std::isfinite(total) || std::abs(total) > opts.divergence_cap) return diverged(evals);
  return IntegralResult{total, total_err, Verdict::inconclusive, evals};
}

namespace {

double log_radius(double R1, double y) {
  if (R1 > 0.0) return std::log(R1) + std::log1p(y / R1);
  return std::log(y);
}

// c * integral of y^e over (y0, y1), accurate for thin cells.
double power_integral(double c, double e, double y0, double y1) {
  const double q = e + 1.0;
  if (y1 == kInfinity) return -c * std::pow(y0, q) / q;
  if (y0 == 0.0) return c * std::pow(y1, q) / q;
  const double lr = std::log1p((y1 - y0) / y0);
  if (q == 0.0) return c * lr;
  return c * std::pow(y0, q) * std::expm1(q * lr) / q;
}

// c * integral of r^b dr over r in (R1 + y0, R1 + y1).
double radial_power_integral(double c, double b, double R1, double y0, double y1) {
  const double r0 = R1 + y0;
  const double q = b + 1.0;
  if (y1 == kInfinity) return -c * std::pow(r0, q) / q;
  const double lr = std::log1p((y1 - y0) / r0);
  if (q == 0.0) return c * lr;
  return c * std::pow(r0, q) * std::expm1(q * lr) / q;
}

// c * integral of (log r)^l / r dr.
double log_integral(double c, double l, double L0, double L1) {
  if (l == -1.0) return c * (std::log(L1) - std::log(L0));
  const double q = l + 1.0;
  return c * (std::pow(L1, q) - std::pow(L0, q)) / q;
}

IntegralResult piece_integral(const WeightModel& f, std::size_t idx, double y0, double y1,
                              const QuadratureOptions& opts) {
  const auto& pc = f.pieces()[idx];
  const double R1 = f.R1();
  auto exact = [](double v) { return IntegralResult{v, 0.0, Verdict::converged, 0}; };

  if (R1 == 0.0) {
    const double e = pc.a + pc.b;
    if (pc.l == 0.0) return exact(power_integral(pc.c, e, y0, y1));
    if (e == -1.0) return exact(log_integral(pc.c, pc.l, std::log(y0), std::log(y1)));
  } else {
    if (pc.l == 0.0 && pc.b == 0.0) return exact(power_integral(pc.c, pc.a, y0, y1));
    if (pc.l == 0.0 && pc.a == 0.0) return exact(radial_power_integral(pc.c, pc.b, R1, y0, y1));
    if (pc.a == 0.0 && pc.b == -1.0) {
      const double L1 = y1 == kInfinity ? kInfinity : log_radius(R1, y1);
      return exact(log_integral(pc.c, pc.l, log_radius(R1, y0), L1));
    }
  }

  QuadratureOptions o = opts;
  o.left_exponent.reset();
  o.right_exponent.reset();
  if (y0 == 0.0) o.left_exponent = f.local_exponents(Endpoint::left_R1).power;
  if (y1 == kInfinity) {
    const auto le = f.local_exponents(Endpoint::infinity);
    if (le.log_power != 0.0 && std::abs(le.power + 1.0) <= kExponentTol) {
      // Borderline power: integrate in s = log r, where the tail is s^l.
      o.right_exponent = le.log_power;
      const double s0 = log_radius(R1, y0);
      return integrate(
          [&f, idx, R1](double s) {
            const double r = std::exp(s);
            return f.at_offset_in_piece(r - R1, idx) * r;
          },
          s0, kInfinity, o);
    }
    o.right_exponent = le.power;
  }
  return integrate([&f, idx](double y) { return f.at_offset_in_piece(y, idx); }, y0, y1, o);
}

}  // namespace

IntegralResult integrate_powerlog_offsets(const WeightModel& f, double x0, double x1,
                                          const QuadratureOptions& opts) {
  const double L = f.R2() - f.R1();
  if (!(x0 >= 0.0) || !(x1 > x0) || x1 > L) {
    throw DomainError("power-log integral limits outside the weight's interval");
  }
  if (x0 == 0.0 && !Asymptote::from(f.local_exponents(Endpoint::left_R1), Approach::to_zero)
                        .integrable()) {
    return diverged();
  }
  if (x1 == kInfinity &&
      !Asymptote::from(f.local_exponents(Endpoint::infinity), Approach::to_infinity)
           .integrable()) {
    return diverged();
  }
  IntegralResult out{0.0, 0.0, Verdict::converged, 0};
  const double R1 = f.R1();
  const auto& pcs = f.pieces();
  for (std::size_t i = 0; i < pcs.size(); ++i) {
    const double lo = std::max(pcs[i].lo - R1, x0);
    const double hi = std::min(pcs[i].hi == kInfinity ? kInfinity : pcs[i].hi - R1, x1);
    if (!(hi > lo)) continue;
    const auto part = piece_integral(f, i, lo, hi, opts);
    out.value += part.value;
    out.abs_error_estimate += part.abs_error_estimate;
    out.evaluations += part.evaluations;
    if (part.verdict == Verdict::diverges) return diverged(out.evaluations);
    if (part.verdict == Verdict::inconclusive) out.verdict = Verdict::inconclusive;
  }
  return out;
}

IntegralResult integrate_exact_powerlog(const WeightModel& f, double a, double b,
                                        const QuadratureOptions& opts) {
  const double R1 = f.R1();
  if (!(a >= R1) || !(b <= f.R2()) || !(b > a)) {
    throw DomainError("integration limits outside the weight's interval");
  }
  return integrate_powerlog_offsets(f, a - R1, b == kInfinity ? kInfinity : b - R1, opts);
}

double powerlog_integral(const WeightModel& f, double x0, double x1, double tol) {
  QuadratureOptions o;
  o.tol = tol;
  return integrate_powerlog_offsets(f, x0, x1, o).value;
}

}  // namespace radplap
