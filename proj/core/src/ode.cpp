#include "ode.hpp"

namespace radplap::detail {
namespace {

constexpr double a21 = 1.0 / 5.0;
constexpr double a31 = 3.0 / 40.0, a32 = 9.0 / 40.0;
constexpr double a41 = 44.0 / 45.0, a42 = -56.0 / 15.0, a43 = 32.0 / 9.0;
constexpr double a51 = 19372.0 / 6561.0, a52 = -25360.0 / 2187.0, a53 = 64448.0 / 6561.0,
                 a54 = -212.0 / 729.0;
constexpr double a61 = 9017.0 / 3168.0, a62 = -355.0 / 33.0, a63 = 46732.0 / 5247.0,
                 a64 = 49.0 / 176.0, a65 = -5103.0 / 18656.0;
constexpr double b1 = 35.0 / 384.0, b3 = 500.0 / 1113.0, b4 = 125.0 / 192.0,
                 b5 = -2187.0 / 6784.0, b6 = 11.0 / 84.0;
constexpr double e1 = 71.0 / 57600.0, e3 = -71.0 / 16695.0, e4 = 71.0 / 1920.0,
                 e5 = -17253.0 / 339200.0, e6 = 22.0 / 525.0, e7 = -1.0 / 40.0;

}  // namespace

StepOutcome dopri5_step(const Rhs& rhs, double t, const State& y, const State& k1, double h) {
  auto at = [&](double c1, double c2, double c3, double c4, double c5, const State& s1,
                const State& s2, const State& s3, const State& s4, const State& s5) {
    State out;
    for (int i = 0; i < 2; ++i) {
      out[i] = y[i] + h * (c1 * s1[i] + c2 * s2[i] + c3 * s3[i] + c4 * s4[i] + c5 * s5[i]);
    }
    return out;
  };
  const State z{0.0, 0.0};
  const State k2 = rhs(t + h / 5.0, at(a21, 0, 0, 0, 0, k1, z, z, z, z));
  const State k3 = rhs(t + 3.0 * h / 10.0, at(a31, a32, 0, 0, 0, k1, k2, z, z, z));
  const State k4 = rhs(t + 4.0 * h / 5.0, at(a41, a42, a43, 0, 0, k1, k2, k3, z, z));
  const State k5 = rhs(t + 8.0 * h / 9.0, at(a51, a52, a53, a54, 0, k1, k2, k3, k4, z));
  const State k6 = rhs(t + h, at(a61, a62, a63, a64, a65, k1, k2, k3, k4, k5));
  StepOutcome out;
  for (int i = 0; i < 2; ++i) {
    out.y[i] = y[i] + h * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] + b5 * k5[i] + b6 * k6[i]);
  }
  out.f = rhs(t + h, out.y);
  for (int i = 0; i < 2; ++i) {
    out.err[i] = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] +
                      e7 * out.f[i]);
  }
  return out;
}

double hermite(double t0, double y0, double d0, double t1, double y1, double d1, double t) {
  const double h = t1 - t0;
  const double s = (t - t0) / h;
  const double s2 = s * s;
  const double s3 = s2 * s;
  return (2 * s3 - 3 * s2 + 1) * y0 + (s3 - 2 * s2 + s) * h * d0 + (-2 * s3 + 3 * s2) * y1 +
         (s3 - s2) * h * d1;
}

}  // namespace radplap::detail
