#pragma once

#include <cstddef>
#include <limits>
#include <optional>
#include <vector>

namespace radplap {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// c * (r - R1)^a * r^b * (log r)^l on the cell [lo, hi).
///
/// Only pieces with lo >= 1 may carry a nonzero log exponent, so the log
/// factor is never negative.
struct PowerLogPiece {
  double lo = 0.0;
  double hi = kInfinity;
  double c = 1.0;
  double a = 0.0;
  double b = 0.0;
  double l = 0.0;

  /// Constant piece sitting at the geometric mean of a bounded band [lower, upper].
  static PowerLogPiece band(double lo, double hi, double lower, double upper);
};

enum class Endpoint { left_R1, right_R2_finite, infinity };

/// Leading term coef * y^power * |log y|^log_power. At a finite endpoint y is
/// the distance to it (y -> 0+); at infinity y = r.
struct LocalExponents {
  double power = 0.0;
  double log_power = 0.0;
  double coef = 1.0;
};

/// Piecewise power-log weight on (R1, R2). At a junction the piece to the
/// right is used.
class WeightModel {
 public:
  WeightModel() = default;
  WeightModel(double R1, std::vector<PowerLogPiece> pieces);

  static WeightModel constant(double R1, double R2, double c = 1.0);
  static WeightModel power_log(double R1, double R2, double c, double a, double b = 0.0,
                               double l = 0.0);

  double R1() const noexcept { return R1_; }
  double R2() const noexcept { return pieces_.empty() ? R1_ : pieces_.back().hi; }
  const std::vector<PowerLogPiece>& pieces() const noexcept { return pieces_; }

  /// One flag per interior junction: true when the left and right limits agree.
  const std::vector<bool>& continuity_flags() const noexcept { return continuous_; }
  std::vector<double> junctions() const;

  /// Value at radius r; throws DomainError unless R1 < r < R2.
  double operator()(double r) const;

  /// Value at r = R1 + x. Prefer this near R1: the factor (r - R1)^a is
  /// evaluated from x directly, so no digits are lost to cancellation.
  double at_offset(double x) const;

  /// Same as at_offset but with the piece fixed by the caller, so one-sided
  /// limits at a junction are available.
  double at_offset_in_piece(double x, std::size_t piece) const;

  std::size_t piece_index(double r) const;
  std::size_t piece_index_at_offset(double x) const;

  LocalExponents local_exponents(Endpoint e) const;

  WeightModel scaled(double factor) const;
  /// Multiply by r^k.
  WeightModel times_power_of_r(double k) const;
  /// Pointwise power f^e.
  WeightModel pow(double e) const;

 private:
  double R1_ = 0.0;
  std::vector<PowerLogPiece> pieces_;
  std::vector<bool> continuous_;
};

double eval_weight(const WeightModel& model, double r);
LocalExponents local_exponents(const WeightModel& model, Endpoint e);

/// Radial problem -(rho |u'|^{p-2} u')' = lambda sigma |u|^{p-2} u on (R1, R2)
/// with rho = r^{N-1} v and sigma = r^{N-1} w.
class ProblemSpec {
 public:
  ProblemSpec(int N, double p, double R1, double R2, WeightModel v, WeightModel w,
              std::optional<double> lambda = std::nullopt);

  int N() const noexcept { return N_; }
  double p() const noexcept { return p_; }
  /// Conjugate exponent p' = p / (p - 1).
  double p_conj() const noexcept { return p_ / (p_ - 1.0); }
  double R1() const noexcept { return R1_; }
  double R2() const noexcept { return R2_; }
  bool exterior() const noexcept { return R2_ == kInfinity; }
  std::optional<double> lambda() const noexcept { return lambda_; }

  const WeightModel& v() const noexcept { return v_; }
  const WeightModel& w() const noexcept { return w_; }
  const WeightModel& rho_model() const noexcept { return rho_; }
  const WeightModel& sigma_model() const noexcept { return sigma_; }
  /// rho^{1-p'} = rho^{-1/(p-1)}.
  const WeightModel& rho_conj_model() const noexcept { return rho_conj_; }

  double rho(double r) const { return rho_(r); }
  double sigma(double r) const { return sigma_(r); }
  double rho_conj_power(double r) const { return rho_conj_(r); }

  double rho_at(double x) const { return rho_.at_offset(x); }
  double sigma_at(double x) const { return sigma_.at_offset(x); }
  double rho_conj_at(double x) const { return rho_conj_.at_offset(x); }

  /// Union of the interior junctions of v and w, sorted.
  std::vector<double> junctions() const;

  ProblemSpec with_weights(WeightModel v, WeightModel w) const;
  ProblemSpec with_lambda(std::optional<double> lambda) const;

 private:
  int N_;
  double p_;
  double R1_;
  double R2_;
  WeightModel v_;
  WeightModel w_;
  WeightModel rho_;
  WeightModel sigma_;
  WeightModel rho_conj_;
  std::optional<double> lambda_;
};

double rho(const ProblemSpec& ps, double r);
double sigma(const ProblemSpec& ps, double r);
double rho_conj_power(const ProblemSpec& ps, double r);

}  // namespace radplap
