#include <algorithm>
#include <cmath>
#include <boost/math/tools/toms748_solve.hpp>
#include <cstdint>
#include <stdexcept>

#include "radplap/errors.hpp"
#include "radplap/quadrature.hpp"
#include "radplap/solver.hpp"

namespace radplap {
namespace {

constexpr double kInnerTol = 1e-13;

// Nodal values from cell increments du[0..n], which sum to zero. Sums run from
// whichever end is closer to the node in the sense of accumulated mass, so no
// node value comes out of a cancellation.
std::vector<double> assemble(const std::vector<double>& du, std::size_t peak) {
  const std::size_t n = du.size() - 1;
  std::vector<double> u(n);
  double acc = 0.0;
  for (std::size_t j = 0; j < n && j <= peak; ++j) {
    acc += du[j];
    u[j] = acc;
  }
  acc = 0.0;
  for (std::size_t j = n; j-- > peak + 1;) {
    acc -= du[j + 1];
    u[j] = acc;
  }
  return u;
}

double energy(const DiscreteForm& form, double p, const std::vector<double>& u) {
  const std::size_t n = u.size();
  double e = 0.0;
  for (std::size_t c = 0; c <= n; ++c) {
    if (!std::isfinite(form.ds[c])) continue;
    const double left = c == 0 ? 0.0 : u[c - 1];
    const double right = c == n ? 0.0 : u[c];
    e += std::pow(std::abs(right - left), p) / std::pow(form.ds[c], p - 1.0);
  }
  return e;
}

double mass_norm(const DiscreteForm& form, double p, const std::vector<double>& u) {
  double d = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) d += form.mass[i] * std::pow(std::abs(u[i]), p);
  return d;
}

}  // namespace

DiscreteForm make_discrete_form(const ProblemSpec& ps, const Mesh& mesh) {
  const std::size_t n = mesh.size();
  const double L = mesh.span();
  if (!(mesh.offset(n - 1) < L)) throw std::invalid_argument("mesh needs a ghost cell at r_end");
  const WeightModel& rc = ps.rho_conj_model();
  const WeightModel& sg = ps.sigma_model();
  DiscreteForm form;
  form.ds.resize(n + 1);
  form.mass.resize(n);
  form.ds[0] = powerlog_integral(rc, 0.0, mesh.offset(0), kInnerTol);
  for (std::size_t c = 1; c < n; ++c) {
    form.ds[c] = powerlog_integral(rc, mesh.offset(c - 1), mesh.offset(c), kInnerTol);
  }
  form.ds[n] = powerlog_integral(rc, mesh.offset(n - 1), L, kInnerTol);
  for (std::size_t i = 0; i < n; ++i) {
    const double a = 0.5 * ((i == 0 ? 0.0 : mesh.offset(i - 1)) + mesh.offset(i));
    const double b = 0.5 * (mesh.offset(i) + (i + 1 == n ? L : mesh.offset(i + 1)));
    form.mass[i] = powerlog_integral(sg, a, b, kInnerTol);
  }
  return form;
}

double rayleigh_quotient(const DiscreteForm& form, double p, const std::vector<double>& u) {
  if (u.size() != form.mass.size()) throw std::invalid_argument("u does not match the mesh");
  const double d = mass_norm(form, p, u);
  if (!(d > 0.0)) throw std::invalid_argument("u vanishes identically");
  return energy(form, p, u) / d;
}

double rayleigh_quotient(const ProblemSpec& ps, const Mesh& mesh, const std::vector<double>& u) {
  return rayleigh_quotient(make_discrete_form(ps, mesh), ps.p(), u);
}

Eigenpair rayleigh_minimize(const ProblemSpec& ps, const Mesh& mesh, const RayleighOptions& opts) {
  const double p = ps.p();
  const DiscreteForm form = make_discrete_form(ps, mesh);
  const std::size_t n = mesh.size();
  const bool free_left = !std::isfinite(form.ds[0]);
  const bool free_right = !std::isfinite(form.ds[n]);
  if (free_left && free_right) {
    throw SolverError("rho^{1-p'} is integrable at neither end of the mesh");
  }

  std::vector<double> u = opts.initial;
  if (u.empty()) {
    u.resize(n);
    double s = free_left ? 0.0 : form.ds[0];
    double total = 0.0;
    for (std::size_t c = free_left ? 1 : 0; c <= (free_right ? n - 1 : n); ++c) total += form.ds[c];
    for (std::size_t i = 0; i < n; ++i) {
      if (i > 0) s += form.ds[i];
      if (free_left) u[i] = total - s;
      else if (free_right) u[i] = s;
      else u[i] = std::min(s, total - s);
    }
  }
  if (u.size() != n) throw std::invalid_argument("initial vector does not match the mesh");
  for (double& v : u) v = std::max(v, 0.0);

  auto normalise = [&](std::vector<double>& v) {
    const double d = std::pow(mass_norm(form, p, v), 1.0 / p);
    for (double& x : v) x /= d;
  };
  normalise(u);
  double lambda = energy(form, p, u);
  double change = 1.0;
  std::size_t it = 0;
  bool increased = false;

  std::vector<double> B(n + 1);
  std::vector<double> du(n + 1);
  for (; it < opts.max_iterations; ++it) {
    B[0] = 0.0;
    for (std::size_t c = 1; c <= n; ++c) B[c] = B[c - 1] + form.mass[c - 1] * phi_p(u[c - 1], p);
    double G0;
    if (free_left) {
      G0 = 0.0;
    } else if (free_right) {
      G0 = B[n];
    } else {
      auto F = [&](double g0) {
        double acc = 0.0;
        for (std::size_t c = 0; c <= n; ++c) acc += form.ds[c] * phi_p_inverse(g0 - B[c], p);
        return acc;
      };
      std::uintmax_t iters = 200;
      const auto br = boost::math::tools::toms748_solve(
          F, 0.0, B[n], boost::math::tools::eps_tolerance<double>(52), iters);
      G0 = 0.5 * (br.first + br.second);
    }
    std::size_t peak = 0;
    for (std::size_t c = 0; c <= n; ++c) {
      const double G = G0 - B[c];
      du[c] = std::isfinite(form.ds[c]) ? form.ds[c] * phi_p_inverse(G, p) : 0.0;
      if (G > 0.0 && c < n) peak = c;
    }
    if (free_left) peak = 0;
    if (free_right) peak = n - 1;
    std::vector<double> next;
    if (free_left) {
      next.assign(n, 0.0);
      double acc = 0.0;
      for (std::size_t j = n; j-- > 0;) {
        acc -= du[j + 1];
        next[j] = acc;
      }
    } else if (free_right) {
      next.assign(n, 0.0);
      double acc = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        acc += du[j];
        next[j] = acc;
      }
    } else {
      next = assemble(du, peak);
    }
    for (double& v : next) v = std::max(v, 0.0);
    normalise(next);
    const double lam_next = energy(form, p, next);
    change = std::abs(lam_next - lambda) / lam_next;
    if (lam_next > lambda * (1.0 + 1e-12)) increased = true;
    u = std::move(next);
    lambda = lam_next;
    if (change <= opts.rel_tol) {
      ++it;
      break;
    }
  }

  Eigenpair eig;
  eig.lambda = lambda;
  eig.mesh = mesh;
  const double umax = *std::max_element(u.begin(), u.end());
  eig.u.resize(n);
  for (std::size_t i = 0; i < n; ++i) eig.u[i] = u[i] / umax;
  eig.flux.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    auto cell_flux = [&](std::size_t c) {
      if (!std::isfinite(form.ds[c])) return 0.0;
      const double left = c == 0 ? 0.0 : eig.u[c - 1];
      const double right = c == n ? 0.0 : eig.u[c];
      return phi_p((right - left) / form.ds[c], p);
    };
    eig.flux[i] = 0.5 * (cell_flux(i) + cell_flux(i + 1));
  }
  eig.zero_count = 0;
  auto& d = eig.diagnostics;
  d.method = "rayleigh";
  d.iterations = it;
  d.bisection_width = change;
  d.truncation_radius = mesh.r_end();
  d.inconclusive = change > opts.rel_tol;
  if (d.inconclusive) d.notes = "descent stopped above tolerance";
  if (increased) d.notes += d.notes.empty() ? "quotient increased during descent" : "; quotient increased";
  d.residual_norm = residual_norm(ps, eig);
  return eig;
}

std::vector<double> fixed_point_left(const ProblemSpec& ps, double lambda, const Mesh& mesh,
                                     std::vector<double> seed, int iterations) {
  const std::size_t n = mesh.size();
  if (seed.size() == 1) seed.assign(n, seed.front());
  if (seed.size() != n) throw std::invalid_argument("seed does not match the mesh");
  if (!(lambda > 0.0)) throw std::invalid_argument("lambda must be positive");
  const double q = ps.p() - 1.0;
  const WeightModel& rc = ps.rho_conj_model();
  const WeightModel& sg = ps.sigma_model();
  std::vector<double> ds(n);
  std::vector<double> sm(n);  // sm[c]: int sigma over (x_{c-1}, x_c), c >= 1
  ds[0] = powerlog_integral(rc, 0.0, mesh.offset(0), kInnerTol);
  for (std::size_t c = 1; c < n; ++c) {
    ds[c] = powerlog_integral(rc, mesh.offset(c - 1), mesh.offset(c), kInnerTol);
    sm[c] = powerlog_integral(sg, mesh.offset(c - 1), mesh.offset(c), kInnerTol);
  }
  if (!std::isfinite(ds[0])) throw SolverError("rho^{1-p'} not integrable near R1", ps.R1());
  const double scale = std::pow(lambda, 1.0 / q);
  std::vector<double> u = std::move(seed);
  std::vector<double> J(n);
  std::vector<double> Jr(n);
  for (int k = 0; k < iterations; ++k) {
    J[n - 1] = 0.0;
    for (std::size_t i = n - 1; i-- > 0;) {
      J[i] = J[i + 1] + sm[i + 1] * 0.5 * (std::pow(std::abs(u[i]), q) + std::pow(std::abs(u[i + 1]), q));
    }
    for (std::size_t i = 0; i < n; ++i) Jr[i] = std::pow(J[i], 1.0 / q);
    u[0] = scale * ds[0] * Jr[0];
    for (std::size_t i = 1; i < n; ++i) u[i] = u[i - 1] + scale * ds[i] * 0.5 * (Jr[i - 1] + Jr[i]);
    const double mx = *std::max_element(u.begin(), u.end());
    if (!std::isfinite(mx) || mx > 1e100) {
      throw SolverError("fixed-point iterates diverge", mesh.radius(n - 1));
    }
  }
  return u;
}

std::vector<double> flux(const ProblemSpec& ps, const Mesh& mesh, const std::vector<double>& u) {
  const std::size_t n = mesh.size();
  if (u.size() != n) throw std::invalid_argument("u does not match the mesh");
  const WeightModel& rc = ps.rho_conj_model();
  std::vector<double> s(n, 0.0);
  for (std::size_t i = 1; i < n; ++i) {
    s[i] = s[i - 1] + powerlog_integral(rc, mesh.offset(i - 1), mesh.offset(i), kInnerTol);
  }
  // Second-order derivative from the three points i0, i0+1, i0+2 evaluated at node k.
  auto deriv = [&](std::size_t i0, std::size_t k) {
    const double x0 = s[i0], x1 = s[i0 + 1], x2 = s[i0 + 2];
    const double t = s[k];
    const double l0 = ((t - x1) + (t - x2)) / ((x0 - x1) * (x0 - x2));
    const double l1 = ((t - x0) + (t - x2)) / ((x1 - x0) * (x1 - x2));
    const double l2 = ((t - x0) + (t - x1)) / ((x2 - x0) * (x2 - x1));
    return l0 * u[i0] + l1 * u[i0 + 1] + l2 * u[i0 + 2];
  };
  std::vector<double> g(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t i0 = i == 0 ? 0 : (i + 1 == n ? n - 3 : i - 1);
    g[i] = phi_p(deriv(i0, i), ps.p());
  }
  return g;
}

}  // namespace radplap
