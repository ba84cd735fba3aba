#include <algorithm>
#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "radplap/mesh.hpp"
#include "radplap/presets.hpp"
#include "radplap/solver.hpp"

using namespace radplap;

namespace {

constexpr double kPi2 = std::numbers::pi * std::numbers::pi;

SolveOptions with_radii(std::vector<double> radii, std::size_t nodes = 2000) {
  SolveOptions o;
  o.truncation_radii = std::move(radii);
  o.mesh.nodes = nodes;
  return o;
}

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

}  // namespace

TEST(PhiP, InverseRoundTrip) {
  for (double p : {1.3, 2.0, 3.7}) {
    for (double s : {-2.5, -1e-3, 0.0, 0.7, 40.0}) {
      EXPECT_NEAR(phi_p_inverse(phi_p(s, p), p), s, 1e-13 * (1.0 + std::abs(s)));
    }
  }
  EXPECT_EQ(phi_p(0.0, 1.5), 0.0);
}

TEST(Shoot, FlatIntervalZeroAtPiSquared) {
  const auto ps = annulus(1);
  const auto mesh = Mesh::graded(ps, 2.0);
  // At pi^2 the zero sits on r = 2 itself; just above it moves inside.
  EXPECT_NEAR(shoot(ps, kPi2, mesh).terminal_u, 0.0, 1e-8);
  const auto res = shoot(ps, kPi2 * (1.0 + 1e-9), mesh);
  ASSERT_TRUE(res.first_zero.has_value());
  EXPECT_NEAR(*res.first_zero, 2.0, 1e-8);
}

TEST(Shoot, NoZeroBelowEigenvalue) {
  const auto ps = annulus(1);
  const auto res = shoot(ps, kPi2 / 4.0, Mesh::graded(ps, 2.0));
  EXPECT_FALSE(res.first_zero.has_value());
  EXPECT_GT(res.terminal_u, 0.0);
}

TEST(Shoot, ThreeDimensionalAnnulus) {
  const auto ps = annulus(3);
  const auto res = shoot(ps, kPi2 * (1.0 + 1e-9), Mesh::graded(ps, 2.0));
  ASSERT_TRUE(res.first_zero.has_value());
  EXPECT_NEAR(*res.first_zero, 2.0, 1e-6);
}

TEST(Shoot, SturmOrdering) {
  // The first zero moves left as lambda grows.
  const auto ps = degenerate_exterior();
  const auto mesh = Mesh::graded(ps, 64.0);
  double prev = kInfinity;
  for (double lam : {8.0, 12.0, 20.0, 40.0}) {
    const auto res = shoot(ps, lam, mesh);
    ASSERT_TRUE(res.first_zero.has_value()) << lam;
    EXPECT_LT(*res.first_zero, prev);
    prev = *res.first_zero;
  }
}

TEST(FindLambda1, FlatInterval) {
  const auto eig = find_lambda1(annulus(1));
  EXPECT_LT(rel(eig.lambda, kPi2), 1e-6);
  EXPECT_EQ(eig.zero_count, 0);
  EXPECT_DOUBLE_EQ(*std::max_element(eig.u.begin(), eig.u.end()), 1.0);
  for (std::size_t i = 0; i < eig.mesh.size(); ++i) {
    EXPECT_NEAR(eig.u[i], std::sin(std::numbers::pi * eig.mesh.offset(i)), 1e-4);
  }
}

TEST(FindLambda1, ThreeDimensionalAnnulus) {
  const auto eig = find_lambda1(annulus(3));
  EXPECT_LT(rel(eig.lambda, kPi2), 1e-5);
  // u proportional to sin(pi (r-1)) / r
  std::size_t mid = eig.mesh.size() / 2;
  const double scale = eig.u[mid] * eig.mesh.radius(mid) / std::sin(std::numbers::pi * eig.mesh.offset(mid));
  for (std::size_t i = 0; i < eig.mesh.size(); i += 37) {
    const double r = eig.mesh.radius(i);
    EXPECT_NEAR(eig.u[i], scale * std::sin(std::numbers::pi * eig.mesh.offset(i)) / r, 1e-5);
  }
}

TEST(FindLambda1, ExteriorLadderDecreases) {
  const auto eig = find_lambda1(degenerate_exterior(), with_radii({4.0, 8.0, 16.0, 32.0}));
  const auto& lad = eig.diagnostics.ladder;
  ASSERT_EQ(lad.size(), 4u);
  for (std::size_t k = 1; k < lad.size(); ++k) EXPECT_LT(lad[k].second, lad[k - 1].second);
  ASSERT_TRUE(eig.diagnostics.extrapolated.has_value());
  EXPECT_LT(*eig.diagnostics.extrapolated, lad.back().second);
  EXPECT_GT(*eig.diagnostics.extrapolated, 0.0);
}

TEST(FindLambda1, HigherShootingValuesHaveZeros) {
  const auto ps = annulus(3);
  const auto eig = find_lambda1(ps);
  const auto res = shoot(ps, 3.0 * eig.lambda, eig.mesh, {false, false, 1e-11});
  EXPECT_EQ(res.sign_changes, 1);
}

TEST(FindLambda1, DecayMatchingLiesBelowDirichlet) {
  auto o = with_radii({16.0});
  const auto dir = find_lambda1(degenerate_exterior(), o);
  o.truncation = TruncationCondition::decay_matching;
  const auto dm = find_lambda1(degenerate_exterior(), o);
  EXPECT_LT(dm.lambda, dir.lambda);
  EXPECT_EQ(dm.diagnostics.method, "shoot/decay-matching");
}

TEST(FindLambda1, PLaplacianAgreesWithRayleigh) {
  const ProblemSpec ps(1, 3.0, 1.0, 2.0, WeightModel::constant(1.0, 2.0), WeightModel::constant(1.0, 2.0));
  const auto shot = find_lambda1(ps);
  const auto ray = rayleigh_minimize(ps, Mesh::graded(ps, 2.0));
  EXPECT_LT(rel(ray.lambda, shot.lambda), 1e-3);
}

TEST(FindLambda1, ResidualIsSmall) {
  const auto eig = find_lambda1(annulus(3));
  EXPECT_LT(residual_norm(annulus(3), eig), 1e-4);
}

TEST(Rayleigh, SineOnFlatInterval) {
  const auto ps = annulus(1);
  const auto mesh = Mesh::graded(ps, 2.0, {4000});
  std::vector<double> u(mesh.size());
  for (std::size_t i = 0; i < u.size(); ++i) u[i] = std::sin(std::numbers::pi * mesh.offset(i));
  EXPECT_LT(rel(rayleigh_quotient(ps, mesh, u), kPi2), 1e-5);
}

TEST(Rayleigh, ScaleInvariant) {
  const auto ps = degenerate_exterior();
  const auto mesh = Mesh::graded(ps, 64.0);
  std::vector<double> u(mesh.size());
  for (std::size_t i = 0; i < u.size(); ++i) u[i] = std::sqrt(mesh.offset(i)) / (1.0 + mesh.offset(i) * mesh.offset(i));
  const double q = rayleigh_quotient(ps, mesh, u);
  for (double c : {1e-6, 3.0, 1e5}) {
    std::vector<double> cu(u);
    for (auto& v : cu) v *= c;
    EXPECT_NEAR(rayleigh_quotient(ps, mesh, cu), q, 1e-12 * q) << c;
  }
}

TEST(Rayleigh, HatBoundsEigenvalueFromAbove) {
  const auto ps = degenerate_exterior();
  auto o = with_radii({64.0});
  const auto eig = find_lambda1(ps, o);
  const auto form = make_discrete_form(ps, eig.mesh);
  std::vector<double> s(eig.mesh.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i) s[i] = (acc += form.ds[i]);
  const double S = acc + form.ds.back();
  std::vector<double> hat(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) hat[i] = std::min(s[i], S - s[i]);
  EXPECT_GE(rayleigh_quotient(form, ps.p(), hat), eig.lambda * (1.0 - 1e-6));
}

TEST(Rayleigh, MinimizerOnFlatInterval) {
  const auto ps = annulus(1);
  const auto ray = rayleigh_minimize(ps, Mesh::graded(ps, 2.0));
  EXPECT_LT(rel(ray.lambda, kPi2), 1e-3);
  EXPECT_FALSE(ray.diagnostics.inconclusive);
}

TEST(Rayleigh, MinimizerAgreesOnDegenerateExample) {
  const auto ps = degenerate_exterior();
  auto o = with_radii({64.0}, 4000);
  const auto shot = find_lambda1(ps, o);
  const auto ray = rayleigh_minimize(ps, shot.mesh);
  EXPECT_LT(rel(ray.lambda, shot.lambda), 1e-3);
}

TEST(FixedPointLeft, ConvergesToSineShape) {
  const ProblemSpec ps(1, 2.0, 1.0, 1.5, WeightModel::constant(1.0, 1.5), WeightModel::constant(1.0, 1.5));
  MeshOptions mo;
  mo.grade_right = false;
  const auto mesh = Mesh::graded(ps, 1.5, mo);
  auto u = fixed_point_left(ps, kPi2, mesh, std::vector<double>(mesh.size(), 1.0), 30);
  const double s = u.back();
  double err = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    err = std::max(err, std::abs(u[i] / s - std::sin(std::numbers::pi * mesh.offset(i))));
  }
  EXPECT_LT(err, 1e-3);
}

TEST(FixedPointLeft, FixesZero) {
  const auto ps = annulus(1);
  const auto mesh = Mesh::graded(ps, 2.0);
  const auto u = fixed_point_left(ps, kPi2, mesh, std::vector<double>(mesh.size(), 0.0), 1);
  for (double v : u) EXPECT_EQ(v, 0.0);
}

TEST(FixedPointLeft, DegenerateLogSlope) {
  const auto ps = degenerate_exterior();
  const ProblemSpec cut(ps.N(), ps.p(), ps.R1(), 2.0, WeightModel::power_log(1.0, 2.0, 1.0, 0.5),
                        WeightModel::power_log(1.0, 2.0, 1.0, -0.25, 0.25 - 4.0));
  MeshOptions mo;
  mo.grade_right = false;
  const auto mesh = Mesh::graded(cut, 2.0, mo);
  const auto u = fixed_point_left(cut, 5.36, mesh, std::vector<double>(mesh.size(), 1.0), 30);
  const double x0 = mesh.offset(0), x1 = mesh.offset(5);
  const double slope = std::log(u[5] / u[0]) / std::log(x1 / x0);
  EXPECT_NEAR(slope, (ps.p() - 1.0 - 0.5) / (ps.p() - 1.0), 0.02);
}

TEST(Flux, LinearFunctionOnFlatWeight) {
  const auto ps = annulus(1);
  const auto mesh = Mesh::graded(ps, 2.0);
  // u = r - 1, built from offsets so no digits are lost near R1. Spacings of
  // 1e-8 next to r = 2 still cost about eight digits there.
  const std::vector<double> u(mesh.offsets().begin(), mesh.offsets().end());
  const auto g = flux(ps, mesh, u);
  for (double v : g) EXPECT_NEAR(v, 1.0, 1e-7);
}

TEST(Flux, CosineForEigenpair) {
  const auto eig = find_lambda1(annulus(1));
  for (std::size_t i = 0; i < eig.mesh.size(); ++i) {
    EXPECT_NEAR(eig.flux[i], std::numbers::pi * std::cos(std::numbers::pi * eig.mesh.offset(i)), 1e-4);
  }
  const auto g = flux(annulus(1), eig.mesh, eig.u);
  for (std::size_t i = 1; i + 1 < g.size(); ++i) EXPECT_NEAR(g[i], eig.flux[i], 1e-4);
}

TEST(Flux, BoundedNearDegenerateEnd) {
  const auto eig = find_lambda1(degenerate_exterior(), with_radii({64.0}));
  double lo = kInfinity, hi = 0.0;
  for (std::size_t i = 0; i < eig.mesh.size() && eig.mesh.offset(i) < 1e-4; ++i) {
    lo = std::min(lo, eig.flux[i]);
    hi = std::max(hi, eig.flux[i]);
  }
  EXPECT_GT(lo, 0.0);
  EXPECT_LT(hi / lo, 1.01);
}

TEST(SolverProperty, Homogeneity) {
  const auto ps = degenerate_exterior();
  const auto o = with_radii({32.0});
  const auto base = find_lambda1(ps, o);
  for (double c : {0.1, 10.0}) {
    const auto w_scaled = find_lambda1(ps.with_weights(ps.v(), ps.w().scaled(c)), o);
    EXPECT_LT(rel(w_scaled.lambda, base.lambda / c), 1e-8) << c;
    ASSERT_EQ(w_scaled.u.size(), base.u.size());
    for (std::size_t i = 0; i < base.u.size(); ++i) EXPECT_NEAR(w_scaled.u[i], base.u[i], 1e-6);
    const auto v_scaled = find_lambda1(ps.with_weights(ps.v().scaled(c), ps.w()), o);
    EXPECT_LT(rel(v_scaled.lambda, base.lambda * c), 1e-8) << c;
  }
}

TEST(SolverProperty, PositiveWithoutInteriorZeros) {
  for (const auto& ps : {annulus(2, 1.5), degenerate_exterior(), singular_exterior(), w1_without_ok()}) {
    const auto eig = find_lambda1(ps, ps.exterior() ? with_radii({32.0}) : SolveOptions{});
    EXPECT_EQ(eig.zero_count, 0);
    EXPECT_GT(eig.lambda, 0.0);
    for (double v : eig.u) EXPECT_GT(v, 0.0);
  }
}
