#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "radplap/errors.hpp"
#include "radplap/presets.hpp"
#include "radplap/weights.hpp"

using namespace radplap;

namespace {

WeightModel power(double a, double b = 0.0, double R2 = kInfinity) {
  return WeightModel::power_log(1.0, R2, 1.0, a, b);
}

}  // namespace

TEST(Weights, UnitBaseEvaluatesToOne) {
  EXPECT_DOUBLE_EQ(eval_weight(power(0.5), 2.0), 1.0);
}

TEST(Weights, SingularPieceFromThreePieceExample) {
  const ProblemSpec ps = w1_without_ok({2.0, 3, 0.5, 1.0, -1.0, -3.0});
  EXPECT_DOUBLE_EQ(eval_weight(ps.w(), 1.5), 2.0);
}

TEST(Weights, ConstantWeight) {
  const auto w = WeightModel::constant(1.0, 5.0, 3.0);
  for (double r : {1.001, 2.0, 4.999}) EXPECT_DOUBLE_EQ(w(r), 3.0);
}

TEST(Weights, OutsideTheIntervalThrows) {
  const auto w = WeightModel::constant(1.0, 2.0);
  EXPECT_THROW(w(1.0), DomainError);
  EXPECT_THROW(w(2.0), DomainError);
  EXPECT_THROW(w(0.5), DomainError);
}

TEST(Weights, JunctionTakesRightPiece) {
  const WeightModel w(1.0, {PowerLogPiece{1.0, 2.0, 1.0, 0.0, 0.0, 0.0},
                            PowerLogPiece{2.0, kInfinity, 5.0, 0.0, 0.0, 0.0}});
  EXPECT_DOUBLE_EQ(w(2.0), 5.0);
  EXPECT_EQ(w.piece_index(2.0), 1u);
  ASSERT_EQ(w.continuity_flags().size(), 1u);
  EXPECT_FALSE(w.continuity_flags()[0]);
}

TEST(Weights, ContinuityFlagsOnMatchingJunction) {
  const ProblemSpec ps = w1_without_ads();
  ASSERT_EQ(ps.w().continuity_flags().size(), 1u);
  EXPECT_TRUE(ps.w().continuity_flags()[0]);
}

TEST(Weights, BandIsGeometricMean) {
  const auto pc = PowerLogPiece::band(2.0, 3.0, 1.0, 9.0);
  EXPECT_DOUBLE_EQ(pc.c, 3.0);
}

TEST(Weights, RhoAndSigma) {
  const auto ps = annulus(3);
  EXPECT_DOUBLE_EQ(rho(ps, 2.0 - 1e-12), std::pow(2.0 - 1e-12, 2));
  const ProblemSpec lin(3, 2.0, 1.0, 3.0, power(1.0, 0.0, 3.0), power(0.0, 0.0, 3.0));
  EXPECT_DOUBLE_EQ(rho(lin, 2.0), 4.0);
  const ProblemSpec one(1, 2.0, 1.0, 3.0, power(0.7, 0.0, 3.0), power(0.0, 0.0, 3.0));
  EXPECT_DOUBLE_EQ(rho(one, 2.5), std::pow(1.5, 0.7));
  EXPECT_DOUBLE_EQ(sigma(ps, 1.5), 2.25);
}

TEST(Weights, ConjugatePower) {
  const ProblemSpec p2(1, 2.0, 1.0, 3.0, power(1.0, 0.0, 3.0), power(0.0, 0.0, 3.0));
  EXPECT_DOUBLE_EQ(rho_conj_power(p2, 2.5), 1.0 / 1.5);
  // rho(2) = 2^2 * (2 - 1)^1 * 2 = 8 with v = (r-1) r.
  const ProblemSpec p3(3, 3.0, 1.0, 3.0, power(1.0, 1.0, 3.0), power(0.0, 0.0, 3.0));
  EXPECT_DOUBLE_EQ(rho(p3, 2.0), 8.0);
  EXPECT_NEAR(rho_conj_power(p3, 2.0), 0.35355339059327373, 1e-15);
  const ProblemSpec flat(1, 1.7, 1.0, 3.0, power(0.0, 0.0, 3.0), power(0.0, 0.0, 3.0));
  EXPECT_DOUBLE_EQ(rho_conj_power(flat, 2.2), 1.0);
}

TEST(Weights, LocalExponents) {
  EXPECT_DOUBLE_EQ(local_exponents(power(0.5), Endpoint::left_R1).power, 0.5);
  EXPECT_DOUBLE_EQ(local_exponents(power(0.0, -4.0), Endpoint::infinity).power, -4.0);
  const auto wl = WeightModel::power_log(1.0, kInfinity, 1.0, 0.0, 2.0, 2.0);
  const auto e = local_exponents(wl, Endpoint::infinity);
  EXPECT_DOUBLE_EQ(e.power, 2.0);
  EXPECT_DOUBLE_EQ(e.log_power, 2.0);
}

TEST(Weights, OffsetEvaluationKeepsPrecisionNearR1) {
  const auto w = power(0.5);
  EXPECT_DOUBLE_EQ(w.at_offset(1e-20), 1e-10);
}

TEST(Weights, Validation) {
  EXPECT_THROW(WeightModel(1.0, {}), SpecError);
  EXPECT_THROW(WeightModel(1.0, {PowerLogPiece{1.0, 2.0, -1.0, 0, 0, 0}}), SpecError);
  EXPECT_THROW(WeightModel(1.0, {PowerLogPiece{1.0, 2.0, 1.0, 0, 0, 0},
                                 PowerLogPiece{2.5, 3.0, 1.0, 0, 0, 0}}),
               SpecError);
  EXPECT_THROW(WeightModel(0.5, {PowerLogPiece{0.5, 2.0, 1.0, 0, 0, 1.0}}), SpecError);
  try {
    WeightModel(1.0, {PowerLogPiece{1.0, 2.0, 1.0, 0, 0, 0}, PowerLogPiece{2.0, 1.5, 1.0, 0, 0, 0}});
    FAIL();
  } catch (const SpecError& e) {
    EXPECT_EQ(e.field(), "/1/hi");
  }
  EXPECT_THROW(ProblemSpec(3, 1.0, 1.0, 2.0, WeightModel::constant(1.0, 2.0),
                           WeightModel::constant(1.0, 2.0)),
               SpecError);
}

TEST(WeightsProperty, ConjugateExponentsScale) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> ex(-3.0, 3.0);
  std::uniform_real_distribution<double> pd(1.1, 5.0);
  for (int i = 0; i < 100; ++i) {
    const double a = ex(rng), b = ex(rng), l = ex(rng), p = pd(rng);
    const int N = 1 + static_cast<int>(rng() % 4);
    const auto v = WeightModel::power_log(1.0, kInfinity, 2.0, a, b, l);
    const ProblemSpec ps(N, p, 1.0, kInfinity, v, WeightModel::constant(1.0, kInfinity));
    const double k = 1.0 - ps.p_conj();
    const auto& rp = ps.rho_model().pieces().front();
    const auto& cp = ps.rho_conj_model().pieces().front();
    EXPECT_NEAR(cp.a, k * rp.a, 1e-14);
    EXPECT_NEAR(cp.b, k * rp.b, 1e-14);
    EXPECT_NEAR(cp.l, k * rp.l, 1e-14);
    EXPECT_NEAR(cp.c, std::pow(rp.c, k), 1e-14 * std::pow(rp.c, k));
  }
}

TEST(WeightsProperty, PositiveAndTiled) {
  const ProblemSpec ps = w1_without_ok();
  for (const WeightModel* m : {&ps.v(), &ps.w()}) {
    double covered = 0.0;
    for (const auto& pc : m->pieces()) {
      if (std::isfinite(pc.hi)) covered += pc.hi - pc.lo;
    }
    EXPECT_DOUBLE_EQ(covered, 2.0);
    for (double r = 1.0 + 1e-9; r < 1e6; r *= 1.37) {
      const double v = (*m)(r);
      EXPECT_TRUE(std::isfinite(v) && v > 0.0) << r;
    }
  }
}
