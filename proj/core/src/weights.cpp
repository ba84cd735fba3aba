#include "radplap/weights.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "radplap/errors.hpp"

namespace radplap {
namespace {

std::string piece_field(std::size_t i, const char* name) {
  return "/" + std::to_string(i) + "/" + name;
}

// log r for r = R1 + x, accurate when x << R1.
double log_radius(double R1, double x) {
  if (R1 > 0.0) return std::log(R1) + std::log1p(x / R1);
  return std::log(x);
}

double piece_value(const PowerLogPiece& pc, double R1, double x) {
  double val = pc.c;
  if (pc.a != 0.0) val *= std::pow(x, pc.a);
  if (pc.b != 0.0) val *= std::pow(R1 + x, pc.b);
  if (pc.l != 0.0) val *= std::pow(log_radius(R1, x), pc.l);
  return val;
}

}  // namespace

PowerLogPiece PowerLogPiece::band(double lo, double hi, double lower, double upper) {
  if (!(lower > 0.0) || !(upper >= lower)) {
    throw SpecError("", "band requires 0 < lower <= upper");
  }
  return PowerLogPiece{lo, hi, std::sqrt(lower * upper), 0.0, 0.0, 0.0};
}

WeightModel::WeightModel(double R1, std::vector<PowerLogPiece> pieces)
    : R1_(R1), pieces_(std::move(pieces)) {
  if (pieces_.empty()) throw SpecError("", "weight needs at least one piece");
  if (!(R1_ >= 0.0) || !std::isfinite(R1_)) throw SpecError("", "R1 must be finite and >= 0");
  if (pieces_.front().lo != R1_) {
    throw SpecError(piece_field(0, "lo"), "first piece must start at R1");
  }
  for (std::size_t i = 0; i < pieces_.size(); ++i) {
    const auto& pc = pieces_[i];
    if (!(pc.hi > pc.lo)) throw SpecError(piece_field(i, "hi"), "hi must exceed lo");
    if (!std::isfinite(pc.lo)) throw SpecError(piece_field(i, "lo"), "lo must be finite");
    if (!(pc.c > 0.0) || !std::isfinite(pc.c)) {
      throw SpecError(piece_field(i, "c"), "coefficient must be finite and positive");
    }
    if (!std::isfinite(pc.a) || !std::isfinite(pc.b) || !std::isfinite(pc.l)) {
      throw SpecError(piece_field(i, "a"), "exponents must be finite");
    }
    if (pc.l != 0.0 && pc.lo < 1.0) {
      throw SpecError(piece_field(i, "l"), "log exponent only allowed on pieces with lo >= 1");
    }
    if (i + 1 < pieces_.size()) {
      if (!std::isfinite(pc.hi)) throw SpecError(piece_field(i, "hi"), "only the last piece may be unbounded");
      if (pieces_[i + 1].lo != pc.hi) {
        throw SpecError(piece_field(i + 1, "lo"), "pieces must tile the interval without gaps");
      }
    }
  }
  continuous_.reserve(pieces_.size() - 1);
  for (std::size_t i = 0; i + 1 < pieces_.size(); ++i) {
    const double x = pieces_[i].hi - R1_;
    const double left = piece_value(pieces_[i], R1_, x);
    const double right = piece_value(pieces_[i + 1], R1_, x);
    continuous_.push_back(std::abs(left - right) <= 1e-9 * std::max(std::abs(left), std::abs(right)));
  }
}

WeightModel WeightModel::constant(double R1, double R2, double c) {
  return WeightModel(R1, {PowerLogPiece{R1, R2, c, 0.0, 0.0, 0.0}});
}

WeightModel WeightModel::power_log(double R1, double R2, double c, double a, double b, double l) {
  return WeightModel(R1, {PowerLogPiece{R1, R2, c, a, b, l}});
}

std::vector<double> WeightModel::junctions() const {
  std::vector<double> out;
  for (std::size_t i = 0; i + 1 < pieces_.size(); ++i) out.push_back(pieces_[i].hi);
  return out;
}

std::size_t WeightModel::piece_index(double r) const {
  // Right-limit convention: a junction belongs to the piece that starts there.
  auto it = std::upper_bound(pieces_.begin(), pieces_.end(), r,
                             [](double val, const PowerLogPiece& pc) { return val < pc.lo; });
  if (it == pieces_.begin()) return 0;
  return static_cast<std::size_t>(std::distance(pieces_.begin(), it)) - 1;
}

std::size_t WeightModel::piece_index_at_offset(double x) const {
  return piece_index(R1_ + x);
}

double WeightModel::operator()(double r) const {
  if (!(r > R1_) || !(r < R2())) {
    throw DomainError("weight evaluated at r = " + std::to_string(r) + " outside (" +
                      std::to_string(R1_) + ", " + std::to_string(R2()) + ")");
  }
  return at_offset_in_piece(r - R1_, piece_index(r));
}

double WeightModel::at_offset(double x) const {
  if (!(x > 0.0) || !(x < R2() - R1_)) {
    throw DomainError("weight evaluated at offset " + std::to_string(x) + " outside (0, " +
                      std::to_string(R2() - R1_) + ")");
  }
  return at_offset_in_piece(x, piece_index(R1_ + x));
}

double WeightModel::at_offset_in_piece(double x, std::size_t piece) const {
  return piece_value(pieces_[piece], R1_, x);
}

LocalExponents WeightModel::local_exponents(Endpoint e) const {
  switch (e) {
    case Endpoint::left_R1: {
      const auto& pc = pieces_.front();
      if (R1_ == 0.0) return {pc.a + pc.b, 0.0, pc.c};
      if (R1_ == 1.0 && pc.l != 0.0) return {pc.a + pc.l, 0.0, pc.c};
      double coef = pc.c * std::pow(R1_, pc.b);
      if (pc.l != 0.0) coef *= std::pow(std::log(R1_), pc.l);
      return {pc.a, 0.0, coef};
    }
    case Endpoint::right_R2_finite: {
      if (!std::isfinite(R2())) throw DomainError("right_R2_finite requested on an unbounded weight");
      return {0.0, 0.0, piece_value(pieces_.back(), R1_, R2() - R1_)};
    }
    case Endpoint::infinity: {
      if (std::isfinite(R2())) throw DomainError("infinity requested on a bounded weight");
      const auto& pc = pieces_.back();
      return {pc.a + pc.b, pc.l, pc.c};
    }
  }
  return {};
}

WeightModel WeightModel::scaled(double factor) const {
  auto pcs = pieces_;
  for (auto& pc : pcs) pc.c *= factor;
  return WeightModel(R1_, std::move(pcs));
}

WeightModel WeightModel::times_power_of_r(double k) const {
  auto pcs = pieces_;
  for (auto& pc : pcs) pc.b += k;
  return WeightModel(R1_, std::move(pcs));
}

WeightModel WeightModel::pow(double e) const {
  auto pcs = pieces_;
  for (auto& pc : pcs) {
    pc.c = std::pow(pc.c, e);
    pc.a *= e;
    pc.b *= e;
    pc.l *= e;
  }
  return WeightModel(R1_, std::move(pcs));
}

double eval_weight(const WeightModel& model, double r) { return model(r); }

LocalExponents local_exponents(const WeightModel& model, Endpoint e) {
  return model.local_exponents(e);
}

ProblemSpec::ProblemSpec(int N, double p, double R1, double R2, WeightModel v, WeightModel w,
                         std::optional<double> lambda)
    : N_(N), p_(p), R1_(R1), R2_(R2), v_(std::move(v)), w_(std::move(w)), lambda_(lambda) {
  if (N_ < 1) throw SpecError("/N", "dimension must be >= 1");
  if (!(p_ > 1.0) || !std::isfinite(p_)) throw SpecError("/p", "p must be finite and > 1");
  if (!(R1_ >= 0.0) || !std::isfinite(R1_)) throw SpecError("/R1", "R1 must be finite and >= 0");
  if (!(R2_ > R1_)) throw SpecError("/R2", "R2 must exceed R1");
  if (v_.R1() != R1_ || v_.R2() != R2_) throw SpecError("/v", "pieces must tile (R1, R2)");
  if (w_.R1() != R1_ || w_.R2() != R2_) throw SpecError("/w", "pieces must tile (R1, R2)");
  if (lambda_ && !(*lambda_ > 0.0)) throw SpecError("/lambda", "lambda must be positive");
  rho_ = v_.times_power_of_r(N_ - 1.0);
  sigma_ = w_.times_power_of_r(N_ - 1.0);
  rho_conj_ = rho_.pow(-1.0 / (p_ - 1.0));
}

std::vector<double> ProblemSpec::junctions() const {
  auto out = v_.junctions();
  const auto wj = w_.junctions();
  out.insert(out.end(), wj.begin(), wj.end());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

ProblemSpec ProblemSpec::with_weights(WeightModel v, WeightModel w) const {
  return ProblemSpec(N_, p_, R1_, R2_, std::move(v), std::move(w), lambda_);
}

ProblemSpec ProblemSpec::with_lambda(std::optional<double> lambda) const {
  return ProblemSpec(N_, p_, R1_, R2_, v_, w_, lambda);
}

double rho(const ProblemSpec& ps, double r) { return ps.rho(r); }
double sigma(const ProblemSpec& ps, double r) { return ps.sigma(r); }
double rho_conj_power(const ProblemSpec& ps, double r) { return ps.rho_conj_power(r); }

}  // namespace radplap
