#include "radplap/conditions.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

#include "radplap/asymptote.hpp"
#include "radplap/errors.hpp"
#include "radplap/quadrature.hpp"

namespace radplap {
namespace {

constexpr double kInnerTol = 1e-13;
constexpr int kProbeDepth = 60;
constexpr int kFiniteRightDepth = 40;

Approach right_approach(const ProblemSpec& ps) {
  return ps.exterior() ? Approach::to_infinity : Approach::to_zero;
}

Asymptote left_asym(const WeightModel& m) {
  return Asymptote::from(m.local_exponents(Endpoint::left_R1), Approach::to_zero);
}

Asymptote right_asym(const ProblemSpec& ps, const WeightModel& m) {
  return Asymptote::from(
      m.local_exponents(ps.exterior() ? Endpoint::infinity : Endpoint::right_R2_finite),
      right_approach(ps));
}

double span(const ProblemSpec& ps) { return ps.R2() - ps.R1(); }

double offset_of(const ProblemSpec& ps, double r) {
  return r == kInfinity ? kInfinity : r - ps.R1();
}

std::optional<double> hint_of(const Asymptote& a) {
  if (a.infinite || a.log_power != 0.0 || a.loglog_power != 0.0) return std::nullopt;
  return a.power;
}

// Adaptive quadrature in offsets, split at the problem's junctions.
IntegralResult integrate_offsets(const ProblemSpec& ps, const std::function<double(double)>& f,
                                 double x0, double x1, std::optional<double> left_hint,
                                 std::optional<double> right_hint, double tol) {
  std::vector<double> cuts{x0};
  for (double j : ps.junctions()) {
    const double x = j - ps.R1();
    if (x > x0 && x < x1) cuts.push_back(x);
  }
  cuts.push_back(x1);
  IntegralResult out{0.0, 0.0, Verdict::converged, 0};
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    QuadratureOptions o;
    o.tol = tol;
    if (i == 0 && x0 == 0.0) o.left_exponent = left_hint;
    if (i + 2 == cuts.size() && x1 == kInfinity) o.right_exponent = right_hint;
    const auto part = integrate(f, cuts[i], cuts[i + 1], o);
    out.value += part.value;
    out.abs_error_estimate += part.abs_error_estimate;
    out.evaluations += part.evaluations;
    if (part.verdict == Verdict::diverges) {
      out.value = kInfinity;
      out.verdict = Verdict::diverges;
      return out;
    }
    if (part.verdict == Verdict::inconclusive) out.verdict = Verdict::inconclusive;
  }
  return out;
}

double env_left(const ProblemSpec& ps, double x) {
  return powerlog_integral(ps.rho_conj_model(), 0.0, x, kInnerTol);
}

double env_right(const ProblemSpec& ps, double x) {
  return powerlog_integral(ps.rho_conj_model(), x, span(ps), kInnerTol);
}

struct Ends {
  Asymptote rc_L, rc_R, sig_L, sig_R;
};

Ends ends(const ProblemSpec& ps) {
  return Ends{left_asym(ps.rho_conj_model()), right_asym(ps, ps.rho_conj_model()),
              left_asym(ps.sigma_model()), right_asym(ps, ps.sigma_model())};
}

// Asymptote of P near each endpoint; P is the smaller of the two branches.
Asymptote capacity_left(const ProblemSpec& ps, const Ends& e) {
  if (e.rc_L.integrable()) return e.rc_L.near_integral().pow(ps.p() - 1.0);
  return e.rc_L.far_integral(e.rc_R.integrable()).pow(ps.p() - 1.0);
}

Asymptote capacity_right(const ProblemSpec& ps, const Ends& e) {
  if (e.rc_R.integrable()) return e.rc_R.near_integral().pow(ps.p() - 1.0);
  return e.rc_R.far_integral(e.rc_L.integrable()).pow(ps.p() - 1.0);
}

void put_exponents(ConditionReport& rep, const std::string& prefix, const Asymptote& a) {
  if (a.infinite) {
    rep.witnesses[prefix + "_power"] = kInfinity;
    return;
  }
  rep.witnesses[prefix + "_power"] = a.power;
  if (a.log_power != 0.0) rep.witnesses[prefix + "_log_power"] = a.log_power;
  if (a.loglog_power != 0.0) rep.witnesses[prefix + "_loglog_power"] = a.loglog_power;
}

// Offset where the left and right capacity branches meet.
double capacity_crossing(const ProblemSpec& ps) {
  const double L = span(ps);
  auto h = [&](double x) { return env_left(ps, x) - env_right(ps, x); };
  double lo;
  double hi;
  if (std::isfinite(L)) {
    lo = 0.0;
    hi = L;
    for (int i = 0; i < 200 && hi - lo > 1e-15 * L; ++i) {
      const double mid = 0.5 * (lo + hi);
      (h(mid) < 0.0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
  }
  double x = 1.0;
  while (h(x) > 0.0 && x > 1e-300) x *= 0.5;
  lo = x;
  hi = x;
  while (h(hi) < 0.0 && hi < 1e300) hi *= 2.0;
  for (int i = 0; i < 200 && hi - lo > 1e-15 * hi; ++i) {
    const double mid = std::sqrt(lo * hi);
    (h(mid) < 0.0 ? lo : hi) = mid;
  }
  return std::sqrt(lo * hi);
}

void require_interior(const ProblemSpec& ps, double xi) {
  if (!(xi > ps.R1()) || !(xi < ps.R2())) {
    throw std::invalid_argument("xi must lie strictly inside (R1, R2)");
  }
}

void require_exterior(const ProblemSpec& ps, const char* what) {
  if (!ps.exterior()) throw std::invalid_argument(std::string(what) + " needs R2 = inf");
}

// F(r) = (int_r^xi sigma)(int_{R1}^r rho^{1-p'})^eps near R1.
Asymptote a_eps_left_asym(const ProblemSpec& ps, double eps) {
  const Ends e = ends(ps);
  return e.sig_L.far_integral() * e.rc_L.near_integral().pow(eps);
}

Asymptote a_eps_right_asym(const ProblemSpec& ps, double eps) {
  const Ends e = ends(ps);
  return e.sig_R.far_integral() * e.rc_R.near_integral().pow(eps);
}

std::optional<double> search_eps(const ProblemSpec& ps, bool left) {
  const Ends e = ends(ps);
  if (!(left ? e.rc_L : e.rc_R).integrable()) return std::nullopt;
  const double top = ps.p() - 1.0;
  auto ok = [&](double eps) {
    return (left ? a_eps_left_asym(ps, eps) : a_eps_right_asym(ps, eps)).bounded();
  };
  if (!ok(top * (1.0 - 1e-12))) return std::nullopt;
  if (ok(top * 1e-15)) return 0.0;
  double lo = 0.0;
  double hi = top;
  for (int i = 0; i < 200 && hi - lo > 1e-15 * top; ++i) {
    const double mid = 0.5 * (lo + hi);
    (ok(mid) ? hi : lo) = mid;
  }
  // An infimum at p - 1 itself leaves the open interval empty.
  if (hi >= top * (1.0 - 1e-9)) return std::nullopt;
  return 0.5 * (lo + hi);
}

}  // namespace

std::string_view to_string(ConditionId id) {
  switch (id) {
    case ConditionId::A: return "A";
    case ConditionId::A_eps_L: return "A_eps_L";
    case ConditionId::A_eps_R: return "A_eps_R";
    case ConditionId::OK: return "OK";
    case ConditionId::W1: return "W1";
    case ConditionId::W2: return "W2";
    case ConditionId::ADS: return "ADS";
  }
  return "?";
}

std::string_view to_string(CheckVerdict v) {
  switch (v) {
    case CheckVerdict::holds: return "holds";
    case CheckVerdict::fails: return "fails";
    case CheckVerdict::inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

double capacity_P(const ProblemSpec& ps, double r) {
  require_interior(ps, r);
  const double x = r - ps.R1();
  const double q = ps.p() - 1.0;
  return std::min(std::pow(env_left(ps, x), q), std::pow(env_right(ps, x), q));
}

std::vector<double> probe_grid_left(const ProblemSpec& ps, double xi, int depth) {
  std::vector<double> out;
  const double d = xi - ps.R1();
  for (int k = 1; k <= depth; ++k) out.push_back(ps.R1() + std::ldexp(d, -k));
  return out;
}

std::vector<double> probe_grid_right(const ProblemSpec& ps, double xi, int depth) {
  std::vector<double> out;
  if (ps.exterior()) {
    for (int k = 1; k <= depth; ++k) out.push_back(std::ldexp(xi, k));
  } else {
    const double d = ps.R2() - xi;
    for (int k = 1; k <= std::min(depth, kFiniteRightDepth); ++k) {
      out.push_back(ps.R2() - std::ldexp(d, -k));
    }
  }
  return out;
}

double default_xi_left(const ProblemSpec& ps) {
  const auto j = ps.junctions();
  const double hi = j.empty() ? ps.R2() : j.front();
  if (hi == kInfinity) return ps.R1() + std::max(1.0, ps.R1());
  return 0.5 * (ps.R1() + hi);
}

double default_xi_right(const ProblemSpec& ps) {
  const auto j = ps.junctions();
  const double lo = j.empty() ? ps.R1() : j.back();
  if (ps.exterior()) return lo + std::max(1.0, lo);
  return 0.5 * (lo + ps.R2());
}

ConditionReport check_A(const ProblemSpec& ps, double tol) {
  ConditionReport rep;
  rep.id = ConditionId::A;
  const Ends e = ends(ps);
  const bool left_ok = e.rc_L.integrable();
  const bool right_ok = e.rc_R.integrable();
  if (!left_ok && !right_ok) {
    rep.verdict = CheckVerdict::fails;
    rep.failed_clause = "P = inf: rho^{1-p'} is integrable at neither endpoint";
    rep.witnesses["int_P_sigma"] = kInfinity;
    return rep;
  }
  Asymptote ps_L;
  Asymptote ps_R;
  try {
    ps_L = capacity_left(ps, e) * e.sig_L;
    ps_R = capacity_right(ps, e) * e.sig_R;
  } catch (const UnsupportedAsymptote& ex) {
    rep.verdict = CheckVerdict::inconclusive;
    rep.notes = ex.what();
    return rep;
  }
  put_exponents(rep, "P_sigma_left", ps_L);
  put_exponents(rep, "P_sigma_right", ps_R);
  const bool int_L = ps_L.integrable();
  const bool int_R = ps_R.integrable();
  if (!int_L || !int_R) {
    rep.verdict = CheckVerdict::fails;
    rep.witnesses["int_P_sigma"] = kInfinity;
    if (!int_L) {
      rep.failed_clause = "P sigma not integrable near R1";
    } else {
      rep.failed_clause = ps.exterior() ? "P sigma not integrable at infinity"
                                        : "P sigma not integrable near R2";
    }
    return rep;
  }

  const double q = ps.p() - 1.0;
  const double L = span(ps);
  double x_star;
  if (left_ok && right_ok) {
    x_star = capacity_crossing(ps);
  } else {
    x_star = left_ok ? L : 0.0;
  }
  IntegralResult total{0.0, 0.0, Verdict::converged, 0};
  auto accumulate = [&](const IntegralResult& r) {
    total.value += r.value;
    total.abs_error_estimate += r.abs_error_estimate;
    total.evaluations += r.evaluations;
    if (r.verdict != Verdict::converged) total.verdict = r.verdict;
  };
  if (x_star > 0.0) {
    accumulate(integrate_offsets(
        ps, [&](double x) { return std::pow(env_left(ps, x), q) * ps.sigma_at(x); }, 0.0,
        x_star, hint_of(ps_L), std::nullopt, tol));
  }
  if (x_star < L) {
    accumulate(integrate_offsets(
        ps, [&](double x) { return std::pow(env_right(ps, x), q) * ps.sigma_at(x); }, x_star,
        L, std::nullopt, hint_of(ps_R), tol));
  }
  rep.witnesses["int_P_sigma"] = total.value;
  rep.witnesses["int_P_sigma_abs_error"] = total.abs_error_estimate;
  rep.witnesses["crossing_radius"] = ps.R1() + x_star;
  if (total.verdict == Verdict::diverges) {
    rep.verdict = CheckVerdict::inconclusive;
    rep.notes = "exponents say integrable but quadrature exceeded the divergence cap";
    return rep;
  }
  rep.verdict = CheckVerdict::holds;
  rep.witnesses["embedding_constant"] = std::pow(total.value, 1.0 / ps.p());
  if (total.verdict == Verdict::inconclusive) {
    rep.notes = "quadrature witness did not reach the requested tolerance";
  }
  return rep;
}

ConditionReport check_A_eps_L(const ProblemSpec& ps, std::optional<double> xi_opt, double eps) {
  if (!(eps > 0.0) || !(eps < ps.p() - 1.0)) {
    throw std::invalid_argument("eps must lie in (0, p-1)");
  }
  const double xi = xi_opt.value_or(default_xi_left(ps));
  require_interior(ps, xi);
  ConditionReport rep;
  rep.id = ConditionId::A_eps_L;
  rep.witnesses["eps"] = eps;
  rep.witnesses["xi"] = xi;
  const Ends e = ends(ps);
  if (!e.rc_L.integrable()) {
    rep.verdict = CheckVerdict::fails;
    rep.failed_clause = "rho^{1-p'} not integrable near R1";
    return rep;
  }
  try {
    const Asymptote F = a_eps_left_asym(ps, eps);
    put_exponents(rep, "F", F);
    rep.verdict = F.bounded() ? CheckVerdict::holds : CheckVerdict::fails;
    if (!F.bounded()) rep.failed_clause = "F(r) unbounded as r -> R1+";
  } catch (const UnsupportedAsymptote& ex) {
    rep.verdict = CheckVerdict::inconclusive;
    rep.notes = ex.what();
  }

  const auto probes = probe_grid_left(ps, xi, kProbeDepth);
  const double xxi = xi - ps.R1();
  // Offsets are built directly; the probe radii themselves lose digits for large k.
  std::vector<double> xs(probes.size());
  for (std::size_t k = 0; k < xs.size(); ++k) xs[k] = std::ldexp(xxi, -static_cast<int>(k) - 1);
  double S = 0.0;
  double prev = xxi;
  std::vector<double> S_k(xs.size());
  for (std::size_t k = 0; k < xs.size(); ++k) {
    S += powerlog_integral(ps.sigma_model(), xs[k], prev, kInnerTol);
    prev = xs[k];
    S_k[k] = S;
  }
  std::vector<double> E_k(xs.size());
  E_k.back() = env_left(ps, xs.back());
  for (std::size_t k = xs.size() - 1; k-- > 0;) {
    E_k[k] = E_k[k + 1] + powerlog_integral(ps.rho_conj_model(), xs[k + 1], xs[k], kInnerTol);
  }
  double sup = 0.0;
  double arg = xi;
  for (std::size_t k = 0; k < xs.size(); ++k) {
    const double F = S_k[k] * std::pow(E_k[k], eps);
    if (F > sup) {
      sup = F;
      arg = probes[k];
    }
  }
  rep.witnesses["sup_F"] = sup;
  rep.witnesses["argmax_r"] = arg;
  rep.witnesses["F_deepest"] = S_k.back() * std::pow(E_k.back(), eps);
  return rep;
}

ConditionReport check_A_eps_R(const ProblemSpec& ps, std::optional<double> xi_opt, double eps) {
  if (!(eps > 0.0) || !(eps < ps.p() - 1.0)) {
    throw std::invalid_argument("eps must lie in (0, p-1)");
  }
  const double xi = xi_opt.value_or(default_xi_right(ps));
  require_interior(ps, xi);
  ConditionReport rep;
  rep.id = ConditionId::A_eps_R;
  rep.witnesses["eps"] = eps;
  rep.witnesses["xi"] = xi;
  const Ends e = ends(ps);
  if (!e.rc_R.integrable()) {
    rep.verdict = CheckVerdict::fails;
    rep.failed_clause = "rho^{1-p'} not integrable near R2";
    return rep;
  }
  try {
    const Asymptote F = a_eps_right_asym(ps, eps);
    put_exponents(rep, "F", F);
    rep.verdict = F.bounded() ? CheckVerdict::holds : CheckVerdict::fails;
    if (!F.bounded()) rep.failed_clause = "F(r) unbounded as r -> R2-";
  } catch (const UnsupportedAsymptote& ex) {
    rep.verdict = CheckVerdict::inconclusive;
    rep.notes = ex.what();
  }
  const auto probes = probe_grid_right(ps, xi, kProbeDepth);
  const double L = span(ps);
  double S = 0.0;
  double prev = xi - ps.R1();
  double sup = 0.0;
  double arg = xi;
  double last = 0.0;
  for (double r : probes) {
    const double x = offset_of(ps, r);
    if (!(x > prev) || !(x < L)) break;
    S += powerlog_integral(ps.sigma_model(), prev, x, kInnerTol);
    prev = x;
    last = S * std::pow(env_right(ps, x), eps);
    if (last > sup) {
      sup = last;
      arg = r;
    }
  }
  rep.witnesses["sup_F"] = sup;
  rep.witnesses["argmax_r"] = arg;
  rep.witnesses["F_deepest"] = last;
  return rep;
}

std::optional<double> search_eps_L(const ProblemSpec& ps, std::optional<double> xi) {
  if (xi) require_interior(ps, *xi);
  return search_eps(ps, true);
}

std::optional<double> search_eps_R(const ProblemSpec& ps, std::optional<double> xi) {
  if (xi) require_interior(ps, *xi);
  return search_eps(ps, false);
}

ConditionReport check_OK(const ProblemSpec& ps) {
  ConditionReport rep;
  rep.id = ConditionId::OK;
  const Ends e = ends(ps);
  const double q = ps.p() - 1.0;
  auto near_or_inf = [](const Asymptote& a) {
    return a.integrable() ? a.near_integral() : Asymptote::infinity(a.approach);
  };
  bool alt1 = false;
  bool alt2 = false;
  try {
    // (int_a^r sigma)(int_r^b rho^{1-p'})^{p-1}
    const Asymptote a1_L = near_or_inf(e.sig_L) * e.rc_L.far_integral(e.rc_R.integrable()).pow(q);
    const Asymptote a1_R = e.sig_R.far_integral(e.sig_L.integrable()) * near_or_inf(e.rc_R).pow(q);
    // (int_r^b sigma)(int_a^r rho^{1-p'})^{p-1}
    const Asymptote a2_L = e.sig_L.far_integral(e.sig_R.integrable()) * near_or_inf(e.rc_L).pow(q);
    const Asymptote a2_R = near_or_inf(e.sig_R) * e.rc_R.far_integral(e.rc_L.integrable()).pow(q);
    alt1 = a1_L.tends_to_zero() && a1_R.tends_to_zero();
    alt2 = a2_L.tends_to_zero() && a2_R.tends_to_zero();
    put_exponents(rep, "alt1_left", a1_L);
    put_exponents(rep, "alt1_right", a1_R);
    put_exponents(rep, "alt2_left", a2_L);
    put_exponents(rep, "alt2_right", a2_R);
  } catch (const UnsupportedAsymptote& ex) {
    rep.verdict = CheckVerdict::inconclusive;
    rep.notes = ex.what();
    return rep;
  }
  rep.witnesses["alt1"] = alt1 ? 1.0 : 0.0;
  rep.witnesses["alt2"] = alt2 ? 1.0 : 0.0;

  const double L = span(ps);
  auto F1 = [&](double x) {
    return powerlog_integral(ps.sigma_model(), 0.0, x, kInnerTol) * std::pow(env_right(ps, x), q);
  };
  auto F2 = [&](double x) {
    return powerlog_integral(ps.sigma_model(), x, L, kInnerTol) * std::pow(env_left(ps, x), q);
  };
  const double xl = std::ldexp(default_xi_left(ps) - ps.R1(), -kFiniteRightDepth);
  const auto right_probes = probe_grid_right(ps, default_xi_right(ps), kFiniteRightDepth);
  const double xr = offset_of(ps, right_probes.back());
  rep.witnesses["alt1_left_probe"] = F1(xl);
  rep.witnesses["alt2_left_probe"] = F2(xl);
  if (xr < L) {
    rep.witnesses["alt1_right_probe"] = F1(xr);
    rep.witnesses["alt2_right_probe"] = F2(xr);
  }
  rep.verdict = (alt1 || alt2) ? CheckVerdict::holds : CheckVerdict::fails;
  if (!alt1 && !alt2) rep.failed_clause = "neither product tends to zero at both endpoints";
  return rep;
}

ConditionReport check_W1(const ProblemSpec& ps, std::optional<double> xi_opt) {
  require_exterior(ps, "W1");
  const auto vj = ps.v().junctions();
  const double xi = xi_opt.value_or(vj.empty() ? ps.R1() + std::max(1.0, ps.R1()) : vj.back());
  require_interior(ps, xi);
  ConditionReport rep;
  rep.id = ConditionId::W1;
  rep.witnesses["xi"] = xi;
  const double q = ps.p() - 1.0;
  const bool critical = std::abs(ps.p() - ps.N()) < 1e-12;
  const WeightModel vm = ps.v().pow(-1.0 / q);
  const Asymptote v_inf = right_asym(ps, ps.v());
  const Asymptote vm_L = left_asym(vm);
  const Asymptote w_L = left_asym(ps.w());
  Asymptote tail = right_asym(ps, ps.w()).times_y_power(critical ? ps.N() - 1.0 : q);
  if (critical) tail.log_power += ps.N() - 1.0;

  std::vector<std::string> failed;
  if (v_inf.tends_to_zero()) failed.push_back("essinf of v over [xi, inf) is zero");
  if (!vm_L.integrable()) failed.push_back("v^{-1/(p-1)} not integrable near R");
  Asymptote inner_L = vm_L.integrable() ? vm_L.near_integral().pow(q) * w_L
                                        : Asymptote::infinity(Approach::to_zero);
  if (!inner_L.integrable()) failed.push_back("inner integral near R diverges");
  if (!tail.integrable()) failed.push_back("tail integral at infinity diverges");
  put_exponents(rep, "inner_left", inner_L);
  put_exponents(rep, "tail", tail);

  const double xxi = xi - ps.R1();
  if (vm_L.integrable()) {
    const auto I1 = integrate_offsets(
        ps,
        [&](double x) {
          return std::pow(powerlog_integral(vm, 0.0, x, kInnerTol), q) * ps.w().at_offset(x);
        },
        0.0, xxi, hint_of(inner_L), std::nullopt, 1e-10);
    rep.witnesses["I_inner"] = I1.value;
  } else {
    rep.witnesses["I_inner"] = kInfinity;
  }
  const double R1 = ps.R1();
  const auto I2 = integrate_offsets(
      ps,
      [&](double x) {
        const double r = R1 + x;
        double f = ps.w().at_offset(x) * std::pow(r, critical ? ps.N() - 1.0 : q);
        if (critical) f *= std::pow(std::abs(std::log(r)), ps.N() - 1.0);
        return f;
      },
      xxi, kInfinity, std::nullopt, hint_of(tail), 1e-10);
  rep.witnesses["I_tail"] = I2.value;

  rep.verdict = failed.empty() ? CheckVerdict::holds : CheckVerdict::fails;
  if (!failed.empty()) rep.failed_clause = failed.front();
  return rep;
}

ConditionReport check_W2(const ProblemSpec& ps, std::optional<double> xi_opt) {
  require_exterior(ps, "W2");
  const auto vj = ps.v().junctions();
  const double xi = xi_opt.value_or(vj.empty() ? ps.R1() + std::max(1.0, ps.R1()) : vj.front());
  require_interior(ps, xi);
  ConditionReport rep;
  rep.id = ConditionId::W2;
  rep.witnesses["xi"] = xi;
  const double q = ps.p() - 1.0;
  const Ends e = ends(ps);
  const Asymptote v_L = left_asym(ps.v());
  const Asymptote head = left_asym(ps.w()).times_y_power(q);

  std::vector<std::string> failed;
  if (v_L.tends_to_zero()) failed.push_back("essinf of v over [R, xi] is zero");
  if (!e.rc_R.integrable()) failed.push_back("[r^{N-1} v]^{-1/(p-1)} not integrable at infinity");
  if (!head.integrable()) failed.push_back("(r-R)^{p-1} w not integrable near R");
  const Asymptote tail = e.rc_R.integrable() ? e.rc_R.near_integral().pow(q) * e.sig_R
                                             : Asymptote::infinity(Approach::to_infinity);
  if (!tail.integrable()) failed.push_back("tail integral at infinity diverges");
  put_exponents(rep, "head", head);
  put_exponents(rep, "tail", tail);

  const double xxi = xi - ps.R1();
  const auto I1 = integrate_offsets(
      ps, [&](double x) { return std::pow(x, q) * ps.w().at_offset(x); }, 0.0, xxi,
      hint_of(head), std::nullopt, 1e-10);
  rep.witnesses["I_head"] = I1.value;
  if (e.rc_R.integrable()) {
    const auto I2 = integrate_offsets(
        ps,
        [&](double x) {
          return std::pow(env_right(ps, x), q) * ps.sigma_at(x);
        },
        xxi, kInfinity, std::nullopt, hint_of(tail), 1e-10);
    rep.witnesses["I_tail"] = I2.value;
  } else {
    rep.witnesses["I_tail"] = kInfinity;
  }
  rep.verdict = failed.empty() ? CheckVerdict::holds : CheckVerdict::fails;
  if (!failed.empty()) rep.failed_clause = failed.front();
  return rep;
}

ConditionReport check_ADS(const ProblemSpec& ps) {
  require_exterior(ps, "ADS");
  ConditionReport rep;
  rep.id = ConditionId::ADS;
  const bool critical = std::abs(ps.p() - ps.N()) < 1e-12;
  const double k = critical ? ps.N() - 1.0 : ps.p() - 1.0;
  const double R1 = ps.R1();
  Asymptote head = left_asym(ps.w());
  if (R1 == 0.0) head = head.times_y_power(k);
  if (critical && R1 == 1.0) head = head.times_y_power(ps.N() - 1.0);
  Asymptote tail = right_asym(ps, ps.w()).times_y_power(k);
  if (critical) tail.log_power += ps.N() - 1.0;
  put_exponents(rep, "head", head);
  put_exponents(rep, "tail", tail);
  const auto I = integrate_offsets(
      ps,
      [&](double x) {
        const double r = R1 + x;
        double f = ps.w().at_offset(x) * std::pow(r, k);
        if (critical) f *= std::pow(std::abs(std::log(r)), ps.N() - 1.0);
        return f;
      },
      0.0, kInfinity, hint_of(head), hint_of(tail), 1e-10);
  rep.witnesses["integral"] = I.value;
  const bool ok = head.integrable() && tail.integrable();
  rep.verdict = ok ? CheckVerdict::holds : CheckVerdict::fails;
  if (!head.integrable()) rep.failed_clause = "weighted w not integrable near R";
  else if (!tail.integrable()) rep.failed_clause = "weighted w not integrable at infinity";
  return rep;
}

std::vector<ConditionReport> check_all(const ProblemSpec& ps, std::optional<double> xi,
                                       std::optional<double> eps, double tol) {
  std::vector<ConditionReport> out;
  out.push_back(check_A(ps, tol));
  auto eps_report = [&](bool left) {
    const auto inf = left ? search_eps_L(ps, xi) : search_eps_R(ps, xi);
    const double top = ps.p() - 1.0;
    ConditionReport rep;
    if (eps) {
      rep = left ? check_A_eps_L(ps, xi, *eps) : check_A_eps_R(ps, xi, *eps);
    } else if (inf) {
      const double e = 0.5 * (*inf + top);
      rep = left ? check_A_eps_L(ps, xi, e) : check_A_eps_R(ps, xi, e);
    } else {
      rep.id = left ? ConditionId::A_eps_L : ConditionId::A_eps_R;
      rep.verdict = CheckVerdict::fails;
      rep.failed_clause = "no eps in (0, p-1) keeps F bounded";
    }
    if (inf) rep.witnesses["eps_infimum"] = *inf;
    return rep;
  };
  out.push_back(eps_report(true));
  out.push_back(eps_report(false));
  out.push_back(check_OK(ps));
  if (ps.exterior()) {
    out.push_back(check_W1(ps));
    out.push_back(check_W2(ps));
    out.push_back(check_ADS(ps));
  }
  return out;
}

}  // namespace radplap
