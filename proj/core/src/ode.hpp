#pragma once

#include <array>
#include <functional>

namespace radplap::detail {

using State = std::array<double, 2>;
using Rhs = std::function<State(double, const State&)>;

struct StepOutcome {
  State y;
  State f;    // derivative at the new point (first stage of the next step)
  State err;  // embedded error estimate
};

/// One Dormand-Prince 5(4) step from (t, y) with derivative f0.
StepOutcome dopri5_step(const Rhs& rhs, double t, const State& y, const State& f0, double h);

/// Cubic Hermite interpolation of one component on [t0, t1].
double hermite(double t0, double y0, double d0, double t1, double y1, double d1, double t);

}  // namespace radplap::detail
