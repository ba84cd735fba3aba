#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "radplap/conditions.hpp"
#include "radplap/presets.hpp"
#include "radplap/weights.hpp"

using namespace radplap;

namespace {

ProblemSpec unit_interval(int N = 1, double p = 2.0) {
  return ProblemSpec(N, p, 0.0, 1.0, WeightModel::constant(0.0, 1.0), WeightModel::constant(0.0, 1.0));
}

bool holds(const ConditionReport& r) { return r.verdict == CheckVerdict::holds; }
bool fails(const ConditionReport& r) { return r.verdict == CheckVerdict::fails; }

}  // namespace

TEST(Capacity, FlatIntervalIsDistanceToNearerEnd) {
  const auto ps = unit_interval();
  for (double r : {0.1, 0.3, 0.5, 0.8, 0.999}) {
    EXPECT_NEAR(capacity_P(ps, r), std::min(r, 1.0 - r), 1e-12) << r;
  }
}

TEST(Capacity, VanishesAtDegenerateLeftEnd) {
  const auto ps = degenerate_exterior();
  double prev = kInfinity;
  for (double x = 0.5; x > 1e-12; x /= 10.0) {
    const double P = capacity_P(ps, 1.0 + x);
    EXPECT_GT(P, 0.0);
    EXPECT_LT(P, prev);
    prev = P;
  }
  EXPECT_LT(prev, 1e-4);
}

TEST(Capacity, ClosedFormTail) {
  // rho = r^{N-1}: int_r^inf t^{-(N-1)/(p-1)} dt = (p-1)/(N-p) r^{-(N-p)/(p-1)}.
  const double p = 2.5;
  const int N = 4;
  const ProblemSpec ps(N, p, 1.0, kInfinity, WeightModel::constant(1.0, kInfinity),
                       WeightModel::power_log(1.0, kInfinity, 1.0, 0.0, -6.0));
  for (double r : {10.0, 100.0, 1e4}) {
    const double expect = std::pow((p - 1.0) / (N - p), p - 1.0) * std::pow(r, -(N - p));
    EXPECT_NEAR(capacity_P(ps, r), expect, 1e-9 * expect) << r;
  }
}

TEST(CapacityProperty, Unimodal) {
  for (const auto& ps : {degenerate_exterior(), singular_exterior(), w1_without_ok(), annulus(3, 3.0)}) {
    std::vector<double> P;
    const double top = ps.exterior() ? 1e6 : ps.R2();
    for (double x = 1e-8; ps.R1() + x < top; x *= 1.25) P.push_back(capacity_P(ps, ps.R1() + x));
    std::size_t k = 1;
    while (k < P.size() && P[k] >= P[k - 1]) ++k;
    while (k < P.size() && P[k] <= P[k - 1]) ++k;
    EXPECT_EQ(k, P.size());
  }
}

TEST(ConditionA, FlatUnitIntervalIsOneQuarter) {
  const auto rep = check_A(unit_interval());
  ASSERT_TRUE(holds(rep));
  EXPECT_NEAR(rep.witnesses.at("int_P_sigma"), 0.25, 1e-10);
  EXPECT_NEAR(rep.witnesses.at("embedding_constant"), 0.5, 1e-10);
}

TEST(ConditionA, ShiftedAnnulusAgrees) {
  const auto rep = check_A(annulus(1));
  ASSERT_TRUE(holds(rep));
  EXPECT_NEAR(rep.witnesses.at("int_P_sigma"), 0.25, 1e-10);
}

TEST(ConditionA, ThreePieceWeightsHold) {
  EXPECT_TRUE(holds(check_A(w1_without_ok())));
}

TEST(ConditionA, CriticalTailFails) {
  for (double p : {2.0, 3.0}) {
    for (int N = static_cast<int>(p) + 1; N <= static_cast<int>(p) + 3; ++N) {
      const auto crit = check_A(critical_tail(p, N, 0.0));
      EXPECT_TRUE(fails(crit)) << p << " " << N;
      EXPECT_EQ(crit.failed_clause, "P sigma not integrable at infinity");
      EXPECT_TRUE(holds(check_A(critical_tail(p, N, 0.1)))) << p << " " << N;
    }
  }
}

TEST(ConditionA, SectionSixExamplesHold) {
  EXPECT_TRUE(holds(check_A(degenerate_exterior())));
  EXPECT_TRUE(holds(check_A(singular_exterior())));
}

TEST(ConditionAEpsL, HoldsAboveInfimum) {
  // delta = 0.25, alpha = 0.5, p = 2: infimum (p-1)(-(delta+1))/(p-1-alpha) clamps to 0.
  const auto ps = degenerate_exterior({2.0, 3, 0.5, 0.25, -4.0});
  for (double eps : {0.05, 0.5, 0.95}) EXPECT_TRUE(holds(check_A_eps_L(ps, std::nullopt, eps))) << eps;
}

TEST(ConditionAEpsL, InfimumFromExponentBalance) {
  // w ~ x^s, rho ~ x^alpha near R1: F ~ x^{(s+1) + eps (p-1-alpha)/(p-1)}, bounded iff
  // eps >= -(s+1)(p-1)/(p-1-alpha).
  struct Case {
    double p, alpha, s;
  };
  for (const Case c : {Case{2.0, 0.0, -1.8}, Case{2.0, 0.5, -1.3}, Case{3.0, 1.0, -1.5},
                       Case{1.5, 0.2, -1.1}}) {
    const auto ps = degenerate_exterior({c.p, 3, c.alpha, c.s, -6.0});
    const double expect = -(c.s + 1.0) * (c.p - 1.0) / (c.p - 1.0 - c.alpha);
    ASSERT_LT(expect, c.p - 1.0);
    const auto got = search_eps_L(ps);
    ASSERT_TRUE(got.has_value());
    EXPECT_NEAR(*got, std::max(0.0, expect), 1e-6) << c.p << " " << c.alpha << " " << c.s;
    EXPECT_TRUE(fails(check_A_eps_L(ps, std::nullopt, 0.9 * expect)));
    EXPECT_TRUE(holds(check_A_eps_L(ps, std::nullopt, 0.5 * (expect + c.p - 1.0))));
  }
}

TEST(ConditionAEpsL, InverseDistanceWeightWithFlatRho) {
  // w = (r-1)^{-1}, alpha = 0, p = 2: the balance gives infimum 0, so every eps holds.
  const auto ps = degenerate_exterior({2.0, 3, 0.0, -1.0, -4.0});
  EXPECT_NEAR(search_eps_L(ps).value_or(-1.0), 0.0, 1e-6);
  EXPECT_TRUE(holds(check_A_eps_L(ps, std::nullopt, 0.5)));
}

TEST(ConditionAEpsL, NoAdmissibleEps) {
  // s = -2: needs eps >= p - 1.
  const auto ps = degenerate_exterior({2.0, 3, 0.0, -2.0, -4.0});
  EXPECT_FALSE(search_eps_L(ps).has_value());
}

TEST(ConditionAEpsL, RejectsEpsOutsideRange) {
  EXPECT_THROW(check_A_eps_L(annulus(1), std::nullopt, 0.0), std::invalid_argument);
  EXPECT_THROW(check_A_eps_L(annulus(1), std::nullopt, 1.0), std::invalid_argument);
}

TEST(ConditionAEpsL, TinyConstantWeightHolds) {
  const ProblemSpec ps(1, 2.0, 1.0, 2.0, WeightModel::constant(1.0, 2.0),
                       WeightModel::constant(1.0, 2.0, 1e-8));
  EXPECT_TRUE(holds(check_A_eps_L(ps, std::nullopt, 0.5)));
}

TEST(ConditionAEpsR, SectionSixExampleHolds) {
  const auto ps = degenerate_exterior();
  ASSERT_TRUE(search_eps_R(ps).has_value());
  EXPECT_TRUE(holds(check_A_eps_R(ps, std::nullopt, 0.5 * (*search_eps_R(ps) + 1.0))));
}

TEST(ConditionAEpsR, FlatRhoNotIntegrableAtInfinity) {
  const ProblemSpec ps(2, 2.0, 1.0, kInfinity, WeightModel::constant(1.0, kInfinity),
                       WeightModel::power_log(1.0, kInfinity, 1.0, 0.0, -4.0));
  const auto rep = check_A_eps_R(ps, std::nullopt, 0.5);
  EXPECT_TRUE(fails(rep));
  EXPECT_FALSE(search_eps_R(ps).has_value());
}

TEST(ConditionAEpsR, BoundedWeightsOnAnnulusHoldForAllEps) {
  const auto ps = annulus(3, 3.0);
  for (double eps : {0.01, 1.0, 1.99}) EXPECT_TRUE(holds(check_A_eps_R(ps, 1.9, eps))) << eps;
}

TEST(ConditionOK, FlatUnitIntervalHolds) { EXPECT_TRUE(holds(check_OK(unit_interval()))); }

TEST(ConditionOK, FastTailHolds) {
  const int N = 4;
  const ProblemSpec ps(N, 2.0, 1.0, kInfinity, WeightModel::constant(1.0, kInfinity),
                       WeightModel::power_log(1.0, kInfinity, 1.0, 0.0, -N - 1.0));
  EXPECT_TRUE(holds(check_OK(ps)));
}

TEST(ConditionOK, ThreePieceWeightsFail) { EXPECT_TRUE(fails(check_OK(w1_without_ok()))); }

TEST(ConditionW, SingularWeightSatisfiesW1NotADS) {
  const auto ps = w1_without_ads();
  EXPECT_TRUE(holds(check_W1(ps)));
  EXPECT_TRUE(fails(check_ADS(ps)));
}

TEST(ConditionW, SingularRhoExampleSatisfiesW2) { EXPECT_TRUE(holds(check_W2(singular_exterior()))); }

TEST(ConditionW, CriticalTailFailsW1) {
  EXPECT_TRUE(fails(check_W1(critical_tail(2.0, 3, 0.0))));
  EXPECT_TRUE(holds(check_W1(critical_tail(2.0, 3, 0.1))));
}

TEST(ConditionW, RequiresExteriorDomain) {
  EXPECT_THROW(check_W1(annulus(3)), std::invalid_argument);
}

TEST(ConditionsProperty, ThreePieceDrawsSatisfyW1ButNotOK) {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const auto prm = random_w1_without_ok(seed);
    const auto ps = w1_without_ok(prm);
    EXPECT_TRUE(holds(check_W1(ps))) << seed;
    EXPECT_TRUE(fails(check_OK(ps))) << seed;
  }
}

// Whenever (A_eps,L) holds the near-R1 part of int P sigma converges.
TEST(ConditionsProperty, EpsLImpliesLeftIntegrability) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  int tested = 0;
  for (int i = 0; i < 60; ++i) {
    DegenerateExteriorParams prm;
    prm.p = 1.3 + 2.5 * u(rng);
    prm.alpha = 0.99 * (prm.p - 1.0) * u(rng);
    prm.delta = -2.5 + 3.0 * u(rng);
    const auto ps = degenerate_exterior(prm);
    const auto eps = search_eps_L(ps);
    if (!eps) continue;
    const double e = 0.5 * (*eps + prm.p - 1.0);
    if (!holds(check_A_eps_L(ps, std::nullopt, e))) continue;
    ++tested;
    EXPECT_NE(check_A(ps).failed_clause, "P sigma not integrable near R1") << i;
  }
  EXPECT_GT(tested, 10);
}

TEST(ConditionsProperty, CheckAllOrderAndApplicability) {
  const auto finite = check_all(annulus(3));
  ASSERT_GE(finite.size(), 4u);
  EXPECT_EQ(finite[0].id, ConditionId::A);
  for (const auto& r : finite) EXPECT_NE(r.id, ConditionId::W1);
  const auto ext = check_all(degenerate_exterior());
  bool has_w1 = false;
  for (const auto& r : ext) has_w1 |= r.id == ConditionId::W1;
  EXPECT_TRUE(has_w1);
}
