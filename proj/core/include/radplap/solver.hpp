#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "radplap/mesh.hpp"
#include "radplap/weights.hpp"

namespace radplap {

/// phi_p(s) = |s|^{p-2} s with phi_p(0) = 0 for every p > 1.
double phi_p(double s, double p);
/// Inverse of phi_p: |s|^{1/(p-1)} sign(s).
double phi_p_inverse(double s, double p);

struct SolverDiagnostics {
  std::string method;
  /// Relative width of the final lambda bracket (shooting) or relative change
  /// of the last iteration (Rayleigh descent).
  double bisection_width = 0.0;
  double truncation_radius = 0.0;
  /// Max over interior nodes of |g' + lambda sigma phi_p(u)| times the local spacing.
  double residual_norm = 0.0;
  std::size_t iterations = 0;
  /// (R_max, lambda) pairs of a truncation ladder, in increasing R_max.
  std::vector<std::pair<double, double>> ladder;
  std::optional<double> extrapolated;
  bool inconclusive = false;
  std::string notes;
};

/// Principal eigenpair on a mesh. u is positive with max u = 1 and flux holds
/// g = rho phi_p(u') at the same nodes.
struct Eigenpair {
  double lambda = 0.0;
  Mesh mesh;
  std::vector<double> u;
  std::vector<double> flux;
  int zero_count = 0;
  SolverDiagnostics diagnostics;
};

struct TracePoint {
  double offset;
  double u;
  double g;
};

struct ShootResult {
  std::optional<double> first_zero;         // radius
  std::optional<double> first_zero_offset;  // radius - R1, full precision
  double terminal_u = 0.0;
  double terminal_flux = 0.0;
  int sign_changes = 0;
  /// Values at the mesh nodes, when requested.
  std::vector<TracePoint> trace;
};

struct ShootOptions {
  bool stop_at_first_zero = true;
  bool record_trace = false;
  double rtol = 1e-11;
};

/// Boundary condition imposed at a truncation radius. decay_matching asks for
/// u'/u to equal envelope'/envelope there, i.e. u + envelope * phi_p^{-1}(g) = 0.
enum class TruncationCondition { dirichlet, decay_matching };

struct SolveOptions {
  MeshOptions mesh;
  TruncationCondition truncation = TruncationCondition::dirichlet;
  /// Truncation radii for R2 = inf. Empty selects R1 * 2^k, k = 2..10.
  std::vector<double> truncation_radii;
  double lambda_min = 1e-12;
  double lambda_max = 1e12;
  /// Relative tolerance on lambda.
  double rel_tol = 1e-10;
  double ode_rtol = 1e-11;
  /// 0 uses the RADIAL_PLAP_THREADS budget.
  unsigned threads = 0;
};

/// Integrate the first-order system from R1 (using the two-sided envelope
/// estimate as initial data) to the mesh end.
ShootResult shoot(const ProblemSpec& ps, double lambda, const Mesh& mesh,
                  const ShootOptions& opts = {});

/// Principal eigenvalue by shooting with a bracketed root search on the
/// terminal value u(r_end). For R2 = inf the problem is truncated with a
/// Dirichlet condition; the returned pair belongs to the largest radius and
/// the diagnostics carry the ladder and its extrapolation.
Eigenpair find_lambda1(const ProblemSpec& ps, const SolveOptions& opts = {});

/// Same, on a given mesh (its end is the Dirichlet point).
Eigenpair find_lambda1_on(const ProblemSpec& ps, const Mesh& mesh, const SolveOptions& opts = {});

std::vector<double> default_truncation_ladder(const ProblemSpec& ps, int kmin = 2, int kmax = 10);

/// Piecewise-linear discretisation in s = int rho^{1-p'}. Cell c lies between
/// node c-1 and node c; cells 0 and n are the ghost cells to R1 and r_end.
struct DiscreteForm {
  std::vector<double> ds;    // n + 1 cell lengths in s, may be +inf for a ghost
  std::vector<double> mass;  // n lumped masses int sigma over dual cells
};

DiscreteForm make_discrete_form(const ProblemSpec& ps, const Mesh& mesh);

/// int rho |u'|^p / int sigma |u|^p for the piecewise-linear interpolant of
/// nodal values u (zero at the ghost boundaries).
double rayleigh_quotient(const ProblemSpec& ps, const Mesh& mesh, const std::vector<double>& u);
double rayleigh_quotient(const DiscreteForm& form, double p, const std::vector<double>& u);

struct RayleighOptions {
  std::size_t max_iterations = 20000;
  double rel_tol = 1e-13;
  /// Starting vector; empty uses the envelope hat min(s, S - s).
  std::vector<double> initial;
};

/// Minimise the discrete Rayleigh quotient by nonlinear inverse iteration.
/// Each step solves the discrete problem -(phi_p(u_new'))' = sigma phi_p(u_old)
/// exactly, so the quotient decreases monotonically.
Eigenpair rayleigh_minimize(const ProblemSpec& ps, const Mesh& mesh,
                            const RayleighOptions& opts = {});

/// Iterates u <- lambda^{1/(p-1)} int_{R1}^r rho^{1-p'}(t) (int_t^a sigma u^{p-1})^{1/(p-1)} dt
/// on the nodes of `mesh`, whose last node is the cut-off a. Returns the
/// final iterate without renormalisation.
std::vector<double> fixed_point_left(const ProblemSpec& ps, double lambda, const Mesh& mesh,
                                     std::vector<double> seed, int iterations);

/// g = rho phi_p(u') at the nodes, from second-order differences in s.
std::vector<double> flux(const ProblemSpec& ps, const Mesh& mesh, const std::vector<double>& u);

/// Interior residual of the first-order system for an eigenpair.
double residual_norm(const ProblemSpec& ps, const Eigenpair& eig);

}  // namespace radplap
