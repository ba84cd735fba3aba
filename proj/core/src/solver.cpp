#include "radplap/solver.hpp"

#include <algorithm>
#include <cmath>
#include <boost/math/tools/toms748_solve.hpp>
#include <cstdint>
#include <string>

#include "ode.hpp"
#include "radplap/asymptote.hpp"
#include "radplap/errors.hpp"
#include "radplap/parallel.hpp"
#include "radplap/quadrature.hpp"

namespace radplap {

double phi_p(double s, double p) {
  if (s == 0.0) return 0.0;
  return std::copysign(std::pow(std::abs(s), p - 1.0), s);
}

double phi_p_inverse(double s, double p) {
  if (s == 0.0) return 0.0;
  return std::copysign(std::pow(std::abs(s), 1.0 / (p - 1.0)), s);
}

namespace {

constexpr double kBlowUp = 1e200;

struct Segment {
  double t0;
  double t1;
  std::size_t rc_piece;
  std::size_t sigma_piece;
};

// Everything about a shooting run that does not depend on lambda.
class Shooter {
 public:
  Shooter(const ProblemSpec& ps, const Mesh& mesh) : ps_(ps), mesh_(mesh) {
    const WeightModel& rc = ps.rho_conj_model();
    const auto rc_left = Asymptote::from(rc.local_exponents(Endpoint::left_R1), Approach::to_zero);
    if (!rc_left.integrable()) {
      throw SolverError("shooting needs rho^{1-p'} integrable near R1", ps.R1());
    }
    x0_ = mesh.offset(0);
    L_ = mesh.span();
    u0_ = envelope_left_at(ps, x0_);
    const double q = ps.p() - 1.0;
    const auto sig_left =
        Asymptote::from(ps.sigma_model().local_exponents(Endpoint::left_R1), Approach::to_zero);
    const Asymptote lead = sig_left * rc_left.near_integral().pow(q);
    QuadratureOptions qo;
    qo.tol = 1e-12;
    if (lead.log_power == 0.0) qo.left_exponent = lead.power;
    const auto I = integrate(
        [&](double x) { return ps.sigma_at(x) * std::pow(envelope_left_at(ps, x), q); }, 0.0,
        x0_, qo);
    if (!std::isfinite(I.value)) {
      throw SolverError("sigma * envelope^{p-1} is not integrable near R1", ps.R1());
    }
    I0_ = I.value;

    std::vector<double> cuts{x0_};
    for (double j : ps.junctions()) {
      const double x = j - ps.R1();
      if (x > x0_ && x < L_) cuts.push_back(x);
    }
    cuts.push_back(L_);
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
      const double mid = 0.5 * (cuts[i] + cuts[i + 1]);
      segments_.push_back(Segment{std::log(cuts[i]), std::log(cuts[i + 1]),
                                  rc.piece_index_at_offset(mid),
                                  ps.sigma_model().piece_index_at_offset(mid)});
    }
    segments_.front().t0 = std::log(x0_);
    segments_.back().t1 = std::log(L_);
  }

  ShootResult run(double lambda, const ShootOptions& opts) const {
    using detail::State;
    const double p = ps_.p();
    const WeightModel& rc = ps_.rho_conj_model();
    const WeightModel& sg = ps_.sigma_model();

    ShootResult res;
    State y{u0_, 1.0 - lambda * I0_};
    if (!(y[1] > 0.0)) {
      // lambda is so large that u turns over before the first node.
      res.first_zero_offset = x0_;
      res.first_zero = ps_.R1() + x0_;
      res.sign_changes = 1;
      res.terminal_u = -u0_;
      res.terminal_flux = y[1];
      return res;
    }
    double u_scale = std::abs(y[0]);
    double g_scale = std::abs(y[1]);

    std::vector<double> node_t;
    std::size_t next_node = 0;
    if (opts.record_trace) {
      for (double x : mesh_.offsets()) node_t.push_back(std::log(x));
      res.trace.push_back(TracePoint{x0_, y[0], y[1]});
      next_node = 1;
    }

    double h = (segments_.back().t1 - segments_.front().t0) / 200.0;
    for (const Segment& seg : segments_) {
      auto rhs = [&](double t, const State& s) -> State {
        const double x = std::exp(t);
        const double du = x * phi_p_inverse(s[1], p) * rc.at_offset_in_piece(x, seg.rc_piece);
        const double dg = -x * lambda * sg.at_offset_in_piece(x, seg.sigma_piece) * phi_p(s[0], p);
        return {du, dg};
      };
      double t = seg.t0;
      State f = rhs(t, y);
      while (t < seg.t1) {
        double stop = seg.t1;
        bool at_node = false;
        if (opts.record_trace && next_node < node_t.size() && node_t[next_node] <= stop) {
          stop = node_t[next_node];
          at_node = true;
        }
        if (stop <= t) {
          if (at_node) {
            res.trace.push_back(TracePoint{mesh_.offset(next_node), y[0], y[1]});
            ++next_node;
            continue;
          }
          break;
        }
        const bool last = h >= stop - t;
        const double step = last ? stop - t : h;
        const auto out = detail::dopri5_step(rhs, t, y, f, step);
        const double atol_u = opts.rtol * u_scale;
        const double atol_g = opts.rtol * g_scale;
        const double eu = std::abs(out.err[0]) /
                          (atol_u + opts.rtol * std::max(std::abs(y[0]), std::abs(out.y[0])));
        const double eg = std::abs(out.err[1]) /
                          (atol_g + opts.rtol * std::max(std::abs(y[1]), std::abs(out.y[1])));
        double en = std::max(eu, eg);
        if (!std::isfinite(en)) en = 1e10;
        if (en <= 1.0) {
          const double t_new = last ? stop : t + step;
          if (!std::isfinite(out.y[0]) || !std::isfinite(out.y[1]) ||
              std::abs(out.y[0]) > kBlowUp || std::abs(out.y[1]) > kBlowUp) {
            throw SolverError("solution blew up", ps_.R1() + std::exp(t_new));
          }
          const bool crossed = (y[0] > 0.0 && out.y[0] <= 0.0) || (y[0] < 0.0 && out.y[0] >= 0.0);
          if (crossed) {
            ++res.sign_changes;
            if (!res.first_zero_offset) {
              double a = t;
              double b = t_new;
              for (int it = 0; it < 80; ++it) {
                const double m = 0.5 * (a + b);
                const double um = detail::hermite(t, y[0], f[0], t_new, out.y[0], out.f[0], m);
                ((um > 0.0) == (y[0] > 0.0) ? a : b) = m;
              }
              res.first_zero_offset = std::exp(0.5 * (a + b));
              res.first_zero = ps_.R1() + *res.first_zero_offset;
              if (opts.stop_at_first_zero) {
                res.terminal_u = out.y[0];
                res.terminal_flux = out.y[1];
                return res;
              }
            }
          }
          t = t_new;
          y = out.y;
          f = out.f;
          u_scale = std::max(u_scale, std::abs(y[0]));
          g_scale = std::max(g_scale, std::abs(y[1]));
          if (at_node && last) {
            res.trace.push_back(TracePoint{mesh_.offset(next_node), y[0], y[1]});
            ++next_node;
          }
        }
        const double fac = en == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(en, -0.2), 0.2, 5.0);
        h = (en <= 1.0 && last) ? std::max(h, step * fac) : step * fac;
        if (h < 1e-14 * std::max(1.0, std::abs(t))) {
          throw SolverError("step size underflow", ps_.R1() + std::exp(t));
        }
      }
    }
    res.terminal_u = y[0];
    res.terminal_flux = y[1];
    while (opts.record_trace && res.trace.size() < mesh_.size()) {
      res.trace.push_back(TracePoint{mesh_.offset(res.trace.size()), y[0], y[1]});
    }
    return res;
  }

 private:
  const ProblemSpec& ps_;
  const Mesh& mesh_;
  double x0_ = 0.0;
  double L_ = 0.0;
  double u0_ = 0.0;
  double I0_ = 0.0;
  std::vector<Segment> segments_;
};

int count_sign_changes(const std::vector<double>& u) {
  double mx = 0.0;
  for (double v : u) mx = std::max(mx, std::abs(v));
  const double floor = 1e-8 * mx;
  int changes = 0;
  int sign = 0;
  for (double v : u) {
    if (std::abs(v) <= floor) continue;
    const int s = v > 0.0 ? 1 : -1;
    if (sign != 0 && s != sign) ++changes;
    sign = s;
  }
  return changes;
}

double aitken(double a, double b, double c) {
  const double d1 = b - a;
  const double d2 = c - b;
  const double den = d2 - d1;
  if (den == 0.0 || d1 == 0.0 || d2 / d1 <= 0.0 || d2 / d1 >= 1.0) return c;
  return c - d2 * d2 / den;
}

}  // namespace

ShootResult shoot(const ProblemSpec& ps, double lambda, const Mesh& mesh, const ShootOptions& opts) {
  if (!(lambda > 0.0)) throw std::invalid_argument("lambda must be positive");
  Shooter s(ps, mesh);
  return s.run(lambda, opts);
}

std::vector<double> default_truncation_ladder(const ProblemSpec& ps, int kmin, int kmax) {
  const double base = ps.R1() > 0.0 ? ps.R1() : 1.0;
  std::vector<double> out;
  for (int k = kmin; k <= kmax; ++k) out.push_back(std::ldexp(base, k));
  return out;
}

Eigenpair find_lambda1_on(const ProblemSpec& ps, const Mesh& mesh, const SolveOptions& opts) {
  Shooter shooter(ps, mesh);
  ShootOptions probe;
  probe.rtol = opts.ode_rtol;
  std::size_t shots = 0;
  std::vector<std::pair<double, double>> zeros;  // (lambda, first zero offset)

  auto has_zero = [&](double lambda) {
    ++shots;
    const auto r = shooter.run(lambda, probe);
    if (r.first_zero_offset) {
      for (const auto& [lam, z] : zeros) {
        const bool bad = (lam < lambda && z < *r.first_zero_offset * (1.0 - 1e-9)) ||
                         (lam > lambda && z > *r.first_zero_offset * (1.0 + 1e-9));
        if (bad) {
          throw SolverError("first-zero location is not monotone in lambda",
                            ps.R1() + *r.first_zero_offset);
        }
      }
      zeros.emplace_back(lambda, *r.first_zero_offset);
      return true;
    }
    return false;
  };

  double lo = 0.0;
  double hi = 0.0;
  double lam = ps.lambda().value_or(1.0);
  if (has_zero(lam)) {
    hi = lam;
    while (true) {
      lam /= 4.0;
      if (lam < opts.lambda_min) {
        throw SolverError("no eigenvalue bracket above lambda_min = " + std::to_string(opts.lambda_min));
      }
      if (!has_zero(lam)) break;
      hi = lam;
    }
    lo = lam;
  } else {
    lo = lam;
    while (true) {
      lam *= 4.0;
      if (lam > opts.lambda_max) {
        throw SolverError("no eigenvalue bracket below lambda_max = " + std::to_string(opts.lambda_max));
      }
      if (has_zero(lam)) break;
      lo = lam;
    }
    hi = lam;
  }

  ShootOptions full = probe;
  full.stop_at_first_zero = false;
  auto terminal = [&](double l) {
    ++shots;
    return shooter.run(l, full);
  };
  // Narrow until the upper end sits below the second eigenvalue.
  ShootResult hi_shot = terminal(hi);
  while (hi_shot.sign_changes != 1 || hi / lo > 1.5) {
    const double mid = std::sqrt(lo * hi);
    if (has_zero(mid)) {
      hi = mid;
      hi_shot = terminal(hi);
    } else {
      lo = mid;
    }
    if (hi / lo < 1.0 + 1e-15) break;
  }
  const ShootResult lo_shot = terminal(lo);
  const double tol_rel = std::min(opts.rel_tol, 1e-12);
  auto f = [&](double l) {
    if (l == lo) return lo_shot.terminal_u;
    if (l == hi) return hi_shot.terminal_u;
    return terminal(l).terminal_u;
  };
  std::uintmax_t max_iter = 200;
  const auto bracket = boost::math::tools::toms748_solve(
      f, lo, hi, lo_shot.terminal_u, hi_shot.terminal_u,
      [tol_rel](double a, double b) { return std::abs(b - a) <= tol_rel * std::min(a, b); },
      max_iter);
  double lambda = 0.5 * (bracket.first + bracket.second);
  double width = (bracket.second - bracket.first) / lambda;

  if (opts.truncation == TruncationCondition::decay_matching && ps.exterior()) {
    // The Dirichlet value is an upper bracket: there u(r_end) = 0 and g < 0.
    const double env = envelope_right_at(ps, mesh.span());
    auto mismatch = [&](double l) {
      const auto r = terminal(l);
      return r.terminal_u + env * phi_p_inverse(r.terminal_flux, ps.p());
    };
    double dhi = lambda;
    double dlo = lambda / 1.5;
    double fhi = mismatch(dhi);
    double flo = mismatch(dlo);
    while (!(flo > 0.0)) {
      dhi = dlo;
      fhi = flo;
      dlo /= 1.5;
      if (dlo < opts.lambda_min) throw SolverError("no decay-matching bracket");
      flo = mismatch(dlo);
    }
    if (fhi < 0.0) {
      std::uintmax_t iters = 200;
      const auto b = boost::math::tools::toms748_solve(
          mismatch, dlo, dhi, flo, fhi,
          [tol_rel](double a, double c) { return std::abs(c - a) <= tol_rel * std::min(a, c); },
          iters);
      lambda = 0.5 * (b.first + b.second);
      width = (b.second - b.first) / lambda;
    } else {
      lambda = dhi;
      width = 0.0;
    }
  }

  ShootOptions rec = full;
  rec.record_trace = true;
  const ShootResult fin = shooter.run(lambda, rec);
  ++shots;

  Eigenpair eig;
  eig.lambda = lambda;
  eig.mesh = mesh;
  double umax = 0.0;
  for (const auto& tp : fin.trace) umax = std::max(umax, tp.u);
  if (!(umax > 0.0)) throw SolverError("eigenfunction has no positive part");
  const double gscale = std::pow(umax, ps.p() - 1.0);
  for (const auto& tp : fin.trace) {
    eig.u.push_back(tp.u / umax);
    eig.flux.push_back(tp.g / gscale);
  }
  eig.zero_count = count_sign_changes(eig.u);
  auto& d = eig.diagnostics;
  d.method = opts.truncation == TruncationCondition::decay_matching && ps.exterior()
                 ? "shoot/decay-matching"
                 : "shoot";
  d.bisection_width = width;
  d.truncation_radius = mesh.r_end();
  d.iterations = shots;
  d.residual_norm = residual_norm(ps, eig);
  return eig;
}

Eigenpair find_lambda1(const ProblemSpec& ps, const SolveOptions& opts) {
  if (!ps.exterior()) {
    return find_lambda1_on(ps, Mesh::graded(ps, ps.R2(), opts.mesh), opts);
  }
  std::vector<double> radii = opts.truncation_radii;
  if (radii.empty()) radii = default_truncation_ladder(ps);
  std::sort(radii.begin(), radii.end());
  for (double r : radii) {
    if (!(r > ps.R1()) || !std::isfinite(r)) {
      throw std::invalid_argument("truncation radii must be finite and exceed R1");
    }
  }
  std::vector<Eigenpair> results(radii.size());
  SolveOptions inner = opts;
  parallel_for(
      radii.size(),
      [&](std::size_t i) {
        results[i] = find_lambda1_on(ps, Mesh::graded(ps, radii[i], opts.mesh), inner);
      },
      opts.threads);
  Eigenpair out = std::move(results.back());
  auto& d = out.diagnostics;
  for (std::size_t i = 0; i < radii.size(); ++i) {
    const double lam = i + 1 == radii.size() ? out.lambda : results[i].lambda;
    d.ladder.emplace_back(radii[i], lam);
  }
  for (std::size_t i = 1; i < d.ladder.size(); ++i) {
    if (d.ladder[i].second > d.ladder[i - 1].second * (1.0 + 1e-9)) {
      d.notes = "truncation ladder is not monotone";
    }
  }
  if (d.ladder.size() >= 3) {
    const std::size_t n = d.ladder.size();
    d.extrapolated = aitken(d.ladder[n - 3].second, d.ladder[n - 2].second, d.ladder[n - 1].second);
  }
  return out;
}

double residual_norm(const ProblemSpec& ps, const Eigenpair& eig) {
  const auto& m = eig.mesh;
  double worst = 0.0;
  for (std::size_t i = 1; i + 1 < m.size(); ++i) {
    const double dx = m.offset(i + 1) - m.offset(i - 1);
    const double dg = (eig.flux[i + 1] - eig.flux[i - 1]) / dx;
    const double res = std::abs(dg + eig.lambda * ps.sigma_at(m.offset(i)) * phi_p(eig.u[i], ps.p()));
    worst = std::max(worst, res * 0.5 * dx);
  }
  return worst;
}

}  // namespace radplap
