#include "radplap/asymptote.hpp"

#include <array>
#include <cmath>

namespace radplap {
namespace {

int sign_with_tol(double v) {
  if (v > kExponentTol) return 1;
  if (v < -kExponentTol) return -1;
  return 0;
}

double snap(double v) { return std::abs(v) <= kExponentTol ? 0.0 : v; }

}  // namespace

Asymptote Asymptote::from(const LocalExponents& le, Approach approach) {
  return Asymptote{approach, le.coef, le.power, le.log_power, 0.0, false};
}

Asymptote Asymptote::constant(double c, Approach approach) {
  return Asymptote{approach, c, 0.0, 0.0, 0.0, false};
}

Asymptote Asymptote::infinity(Approach approach) {
  return Asymptote{approach, 1.0, 0.0, 0.0, 0.0, true};
}

Asymptote Asymptote::operator*(const Asymptote& other) const {
  Asymptote out = *this;
  out.infinite = infinite || other.infinite;
  out.coef *= other.coef;
  out.power += other.power;
  out.log_power += other.log_power;
  out.loglog_power += other.loglog_power;
  return out;
}

Asymptote Asymptote::pow(double e) const {
  Asymptote out = *this;
  out.coef = std::pow(coef, e);
  out.power *= e;
  out.log_power *= e;
  out.loglog_power *= e;
  return out;
}

Asymptote Asymptote::times_y_power(double k) const {
  Asymptote out = *this;
  out.power += k;
  return out;
}

int Asymptote::growth_sign() const {
  if (infinite) return 1;
  const std::array<double, 3> g{approach == Approach::to_zero ? -power : power, log_power,
                                loglog_power};
  for (double c : g) {
    const int s = sign_with_tol(c);
    if (s != 0) return s;
  }
  return 0;
}

bool Asymptote::integrable() const {
  if (infinite) return false;
  // Compare y * f against the borderline y^0 |log y|^{-1} (log|log y|)^{-1}.
  const double g = approach == Approach::to_zero ? -(power + 1.0) : power + 1.0;
  const int s = sign_with_tol(g);
  if (s != 0) return s < 0;
  if (sign_with_tol(log_power + 1.0) != 0) return log_power < -1.0;
  return loglog_power < -1.0 - kExponentTol;
}

Asymptote Asymptote::near_integral() const {
  if (!integrable()) throw std::logic_error("near_integral of a non-integrable asymptote");
  Asymptote out = *this;
  const double q = power + 1.0;
  if (sign_with_tol(q) != 0) {
    out.power = snap(q);
    out.coef = coef / std::abs(q);
    return out;
  }
  out.power = 0.0;
  if (sign_with_tol(log_power + 1.0) != 0) {
    out.log_power = snap(log_power + 1.0);
    out.coef = coef / std::abs(log_power + 1.0);
    return out;
  }
  out.log_power = 0.0;
  out.loglog_power = snap(loglog_power + 1.0);
  out.coef = coef / std::abs(loglog_power + 1.0);
  return out;
}

Asymptote Asymptote::far_integral(bool far_end_finite, double limit_value) const {
  if (infinite || !far_end_finite) return infinity(approach);
  if (integrable()) return constant(limit_value, approach);
  Asymptote out = *this;
  const double q = power + 1.0;
  if (sign_with_tol(q) != 0) {
    out.power = snap(q);
    out.coef = coef / std::abs(q);
    return out;
  }
  out.power = 0.0;
  if (sign_with_tol(log_power + 1.0) != 0) {
    out.log_power = snap(log_power + 1.0);
    out.coef = coef / std::abs(log_power + 1.0);
    return out;
  }
  out.log_power = 0.0;
  if (sign_with_tol(loglog_power + 1.0) == 0) {
    throw UnsupportedAsymptote("integral grows like a triple logarithm");
  }
  out.loglog_power = snap(loglog_power + 1.0);
  out.coef = coef / std::abs(loglog_power + 1.0);
  return out;
}

}  // namespace radplap
