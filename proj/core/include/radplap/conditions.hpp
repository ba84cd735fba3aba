#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "radplap/weights.hpp"

namespace radplap {

enum class ConditionId { A, A_eps_L, A_eps_R, OK, W1, W2, ADS };
enum class CheckVerdict { holds, fails, inconclusive };

std::string_view to_string(ConditionId id);
std::string_view to_string(CheckVerdict v);

/// Outcome of one hypothesis check. Verdicts come from the exponent algebra;
/// `witnesses` holds the numerical evidence (integral values, sup estimates,
/// probe locations) that backs them.
struct ConditionReport {
  ConditionId id = ConditionId::A;
  CheckVerdict verdict = CheckVerdict::inconclusive;
  std::map<std::string, double> witnesses;
  /// Which clause failed, empty when the condition holds.
  std::string failed_clause;
  std::string notes;
};

/// Capacity P(r): the smaller of (int_{R1}^r rho^{1-p'})^{p-1} and
/// (int_r^{R2} rho^{1-p'})^{p-1}. Either branch may be +inf.
double capacity_P(const ProblemSpec& ps, double r);

/// Radii R1 + (xi - R1) 2^{-k}, k = 1..depth, approaching R1 from xi.
std::vector<double> probe_grid_left(const ProblemSpec& ps, double xi, int depth = 60);
/// Radii approaching R2 from xi (xi * 2^k at infinity).
std::vector<double> probe_grid_right(const ProblemSpec& ps, double xi, int depth = 60);

/// Default xi near R1: midpoint of the first cell of the joint partition of v and w.
double default_xi_left(const ProblemSpec& ps);
double default_xi_right(const ProblemSpec& ps);

/// Integrability of P * sigma. Witness `embedding_constant` = (int P sigma)^{1/p}.
ConditionReport check_A(const ProblemSpec& ps, double tol = 1e-10);

ConditionReport check_A_eps_L(const ProblemSpec& ps, std::optional<double> xi, double eps);
ConditionReport check_A_eps_R(const ProblemSpec& ps, std::optional<double> xi, double eps);

/// Infimum of the admissible eps in (0, p-1), clamped below at 0. Empty when no
/// eps in the open interval works.
std::optional<double> search_eps_L(const ProblemSpec& ps, std::optional<double> xi = std::nullopt);
std::optional<double> search_eps_R(const ProblemSpec& ps, std::optional<double> xi = std::nullopt);

ConditionReport check_OK(const ProblemSpec& ps);

/// Exterior-domain conditions; require R2 = inf.
ConditionReport check_W1(const ProblemSpec& ps, std::optional<double> xi = std::nullopt);
ConditionReport check_W2(const ProblemSpec& ps, std::optional<double> xi = std::nullopt);
/// w in L^1((R1, inf); r^{p-1}), or [r log r]^{N-1} when p = N.
ConditionReport check_ADS(const ProblemSpec& ps);

/// Everything applicable to the domain, in a fixed order. xi is the split
/// point of both endpoint conditions; without eps each of them is tested
/// midway between the infimum from search_eps_* and p - 1.
std::vector<ConditionReport> check_all(const ProblemSpec& ps, std::optional<double> xi = std::nullopt,
                                       std::optional<double> eps = std::nullopt, double tol = 1e-10);

}  // namespace radplap
