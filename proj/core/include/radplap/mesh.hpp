#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "radplap/weights.hpp"

namespace radplap {

struct MeshOptions {
  std::size_t nodes = 2000;
  /// Offset of the first node from R1; 0 picks it so that the envelope there
  /// is 1e-6 of its value at mid-interval.
  double delta_left = 0.0;
  /// Distance of the last node from the right end; 0 picks it the same way.
  double delta_right = 0.0;
  /// When false the last node sits exactly on the right end (used for
  /// one-sided computations on (R1, a]).
  bool grade_right = true;
};

/// Nodes on (R1, r_end), stored as offsets x = r - R1 so that nodes close to
/// R1 keep full relative precision. R1 and r_end themselves are not nodes;
/// they act as ghost boundary points where u = 0.
class Mesh {
 public:
  Mesh() = default;
  Mesh(double R1, double r_end, std::vector<double> offsets);

  /// Geometrically graded towards both ends, uniform in the middle, and
  /// log-spaced on long tails. Weight junctions are inserted as nodes.
  static Mesh graded(const ProblemSpec& ps, double r_end, const MeshOptions& opts = {});

  double R1() const noexcept { return R1_; }
  double r_end() const noexcept { return r_end_; }
  double span() const noexcept { return r_end_ - R1_; }
  std::size_t size() const noexcept { return x_.size(); }
  std::span<const double> offsets() const noexcept { return x_; }
  double offset(std::size_t i) const { return x_[i]; }
  double radius(std::size_t i) const { return R1_ + x_[i]; }
  std::vector<double> radii() const;

 private:
  double R1_ = 0.0;
  double r_end_ = 0.0;
  std::vector<double> x_;
};

/// int_{R1}^{R1+x} rho^{1-p'} and int_{R1+x}^{R2} rho^{1-p'} (R2 may be inf).
double envelope_left_at(const ProblemSpec& ps, double x);
double envelope_right_at(const ProblemSpec& ps, double x);

}  // namespace radplap
