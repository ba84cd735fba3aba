#include "radplap/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

#include "radplap/asymptote.hpp"
#include "radplap/quadrature.hpp"

namespace radplap {
namespace {

constexpr double kEnvelopeDrop = 1e-6;

// Bisection in log-space for the point where a monotone function crosses target.
// `increasing` tells the direction of f in d.
double log_bisect(const std::function<double(double)>& f, double target, double lo, double hi,
                  bool increasing) {
  for (int i = 0; i < 100; ++i) {
    const double mid = std::sqrt(lo * hi);
    const bool below = f(mid) < target;
    if (below == increasing) {
      lo = mid;
    } else {
      hi = mid;
    }
    if (hi / lo < 1.0 + 1e-6) break;
  }
  return std::sqrt(lo * hi);
}

}  // namespace

Mesh::Mesh(double R1, double r_end, std::vector<double> offsets)
    : R1_(R1), r_end_(r_end), x_(std::move(offsets)) {
  const double L = r_end_ - R1_;
  if (!(L > 0.0) || !std::isfinite(L)) throw std::invalid_argument("mesh needs a finite interval");
  if (x_.size() < 3) throw std::invalid_argument("mesh needs at least 3 nodes");
  for (std::size_t i = 0; i < x_.size(); ++i) {
    if (!(x_[i] > 0.0) || x_[i] > L || (i > 0 && !(x_[i] > x_[i - 1]))) {
      throw std::invalid_argument("mesh offsets must increase strictly inside (0, r_end - R1]");
    }
  }
}

std::vector<double> Mesh::radii() const {
  std::vector<double> out(x_.size());
  for (std::size_t i = 0; i < x_.size(); ++i) out[i] = R1_ + x_[i];
  return out;
}

double envelope_left_at(const ProblemSpec& ps, double x) {
  return powerlog_integral(ps.rho_conj_model(), 0.0, x, 1e-13);
}

double envelope_right_at(const ProblemSpec& ps, double x) {
  return powerlog_integral(ps.rho_conj_model(), x, ps.R2() - ps.R1(), 1e-13);
}

Mesh Mesh::graded(const ProblemSpec& ps, double r_end, const MeshOptions& opts) {
  const double R1 = ps.R1();
  const double L = r_end - R1;
  if (!(L > 0.0) || !std::isfinite(L) || r_end > ps.R2()) {
    throw std::invalid_argument("mesh end must be finite and inside (R1, R2]");
  }
  if (opts.nodes < 8) throw std::invalid_argument("mesh needs at least 8 nodes");
  const WeightModel& rc = ps.rho_conj_model();

  double dl = opts.delta_left;
  if (dl <= 0.0) {
    const bool integrable =
        Asymptote::from(rc.local_exponents(Endpoint::left_R1), Approach::to_zero).integrable();
    if (integrable) {
      const double target = kEnvelopeDrop * envelope_left_at(ps, 0.5 * L);
      const double floor = 1e-40 * L;
      auto env = [&](double x) { return envelope_left_at(ps, x); };
      dl = env(floor) >= target ? floor : log_bisect(env, target, floor, 0.5 * L, true);
    } else {
      dl = 1e-8 * L;
    }
    dl = std::min(dl, 1e-3 * L);
  }

  double dr = 0.0;
  if (opts.grade_right) {
    dr = opts.delta_right;
    if (dr <= 0.0) {
      auto tail = [&](double d) { return powerlog_integral(rc, L - d, L, 1e-13); };
      const double target = kEnvelopeDrop * tail(0.5 * L);
      const double floor = 1e-13 * L;
      dr = tail(floor) >= target ? floor : log_bisect(tail, target, floor, 0.5 * L, true);
      dr = std::min(dr, 1e-3 * L);
    }
  }

  const bool tail_log = ps.exterior();
  const double H = tail_log ? std::min(L, R1 > 0.0 ? R1 : 1.0) / 16.0 : L / 16.0;
  auto spacing = [&](double x) {
    double h = x;
    if (opts.grade_right) h = std::min(h, L - x);
    const double mid = tail_log ? std::max(H, (R1 + x) / 16.0) : H;
    return std::min(h, mid);
  };
  const double stop = opts.grade_right ? L - dr : L;

  auto march = [&](double dz, std::vector<double>* out) {
    std::size_t count = 1;
    double x = dl;
    if (out) out->assign(1, x);
    while (true) {
      const double nx = x + dz * spacing(x);
      if (!(nx < stop) || nx <= x) break;
      x = nx;
      ++count;
      if (out) out->push_back(x);
      if (count > 10 * opts.nodes) break;
    }
    if (out && out->back() < stop) out->push_back(stop);
    return count + 1;
  };

  double lo = 1e-8;
  double hi = 0.9;
  for (int i = 0; i < 80; ++i) {
    const double mid = std::sqrt(lo * hi);
    (march(mid, nullptr) > opts.nodes ? lo : hi) = mid;
  }
  std::vector<double> xs;
  march(hi, &xs);

  std::vector<double> cuts;
  for (double j : ps.junctions()) {
    const double x = j - R1;
    if (x > dl && x < stop) cuts.push_back(x);
  }
  if (!cuts.empty()) {
    std::vector<double> kept;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      bool near = false;
      for (double c : cuts) {
        if (std::abs(xs[i] - c) < 0.3 * hi * spacing(c)) near = true;
      }
      if (!near || i == 0 || i + 1 == xs.size()) kept.push_back(xs[i]);
    }
    kept.insert(kept.end(), cuts.begin(), cuts.end());
    std::sort(kept.begin(), kept.end());
    kept.erase(std::unique(kept.begin(), kept.end()), kept.end());
    xs = std::move(kept);
  }
  return Mesh(R1, r_end, std::move(xs));
}

}  // namespace radplap
