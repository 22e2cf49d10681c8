#pragma once

#include <string>
#include <vector>

#include "daipp/acg.hpp"
#include "daipp/problem.hpp"

namespace daipp {

/// How the stepsize lambda is validated against the lower curvature m.
enum class LambdaMode {
  kStrict,  // 0 < lambda <= 1/(2m)
  kLoose,   // 0 < lambda < 1/m
};

struct DaippParams {
  double lambda = 0.0;
  double theta = 0.0;
  double delta = 0.0;
  double rho_bar = 0.0;
  double eps_bar = 0.0;
  int max_outer = 100000;
  int max_inner = 1000000;  // cap on one ACG call, counting step-3 iterations
  LambdaMode mode = LambdaMode::kStrict;
  bool record_trajectory = true;

  /// xi = 1 - lambda m.
  [[nodiscard]] double xi(double m) const { return 1.0 - lambda * m; }
};

/// Throws ParameterError unless the parameters are admissible for curvature m.
void validate(const DaippParams& params, double m);

/// lambda = 1/(2m), theta = 0.49 xi and delta = max(0, 0.9 (M/m)^{1/7} - theta).
[[nodiscard]] DaippParams default_params(double m, double M, double rho_bar, double eps_bar);

/// The benchmark setting lambda = 0.9/m, theta = 0.49 xi,
/// theta + delta = 0.9 (M/m)^{1/7}, validated in loose mode.
[[nodiscard]] DaippParams experiment_params(double m, double M, double rho_bar, double eps_bar);

struct Tolerances {
  double lambda = 0.0;
  double rho_bar = 0.0;
  double eps_bar = 0.0;
};

/// Tolerances under which the refined pair is a rho_hat-approximate
/// stationary point: (1/(2m), rho_hat/4, rho_hat^2 / (32 (M + 2m))).
[[nodiscard]] Tolerances map_tolerances(double rho_hat, double m, double M);

/// Ceiling on delta outside of which the outer complexity degrades; the
/// order-of-magnitude window is taken with constant 10.
[[nodiscard]] double delta_window_upper(double lambda, double rho_bar, double D);

struct OuterCoefficients {
  double a = 0.0;
  double A_next = 0.0;
};

/// a = (1 + sqrt(1 + 4A)) / 2 and A_next = A + a, so that A_next = a^2.
[[nodiscard]] OuterCoefficients outer_coefficients(double A);

/// (A y + a x) / (A + a).
[[nodiscard]] Vector compute_x_tilde(double A, double a, const Vector& y, const Vector& x);

/// Inner subproblem min lambda phi + |. - x_tilde|^2 / 2, split as
///   psi_s = lambda f + w |. - x_tilde|^2,  psi_n = lambda h + (1/2 - w)|. - x_tilde|^2
/// with w = max(1/4, lambda m / 2). For lambda <= 1/(2m) this gives
/// L = lambda M + 1/2 and mu = 1/2; larger lambda moves just enough of the
/// quadratic into psi_s to keep it convex.
[[nodiscard]] AcgProblem build_inner_problem(const CompositeProblem& prob,
                                             const DaippParams& params, const Vector& x_tilde);

struct InnerTriple {
  Vector z;
  Vector u;
  double eta = 0.0;
};

/// |u + delta (z - x_tilde)|^2 / (xi/2 + delta) + 2 eta <= (xi/4 + delta) |z - x_tilde|^2.
[[nodiscard]] bool stop_inner_test(double xi, double delta, const InnerTriple& triple,
                                   const Vector& x_tilde);

/// Accelerated prox-center update for x_{k+1}. Throws ParameterError when
/// the denominator xi/2 - theta + (theta + delta)/a is not positive.
[[nodiscard]] Vector outer_x_update(double xi, double theta, double delta, double a,
                                    const Vector& v_tilde, const Vector& y_next, const Vector& x,
                                    const Vector& y);

/// |z - x_tilde| <= lambda rho_bar / 2.
[[nodiscard]] bool stop_outer_test(double lambda, double rho_bar, const Vector& z,
                                   const Vector& x_tilde);

/// ceil(6 sqrt(2 lambda M + 1)), the minimum length of every step-1 ACG call.
[[nodiscard]] int inner_iteration_floor(double lambda, double M);

struct FinalRefinement {
  InnerTriple triple;
  int extra_iterations = 0;
};

/// Continues the ACG trajectory in `state` until the inner stopping test
/// holds and eta <= lambda eps_bar.
[[nodiscard]] FinalRefinement final_refine(const AcgProblem& inner, const DaippParams& params,
                                           double xi, const Vector& x_tilde, AcgState& state);

/// (lambda, z_minus, z, w, eps) with w an eps-subgradient of
/// phi + |. - z_minus|^2 / (2 lambda) at z.
struct ProxApproxSolution {
  double lambda = 0.0;
  Vector z_minus;
  Vector z;
  Vector w;
  double eps = 0.0;
};

/// One outer iteration. Vector fields are filled only when trajectories are
/// recorded.
struct OuterRecord {
  int k = 0;
  double A = 0.0;        // A_k
  double a = 0.0;        // a_k
  int inner_iterations = 0;
  double residual = 0.0;  // |y_{k+1} - x_tilde_k| / lambda
  double phi = 0.0;       // phi(y_{k+1})
  double eps_tilde = 0.0;  // 2 eta
  Vector x;        // x_k
  Vector y;        // y_k
  Vector x_tilde;  // x_tilde_k
  Vector y_next;   // y_{k+1}
  Vector v_tilde;  // v_tilde_{k+1}
};

struct DaippReport {
  std::vector<OuterRecord> outer;
  int total_inner_iterations = 0;
  int final_extra_iterations = 0;
  int inner_floor = 0;
  /// |y_{K+1} - x_tilde_K| / lambda after step 3.
  double final_residual = 0.0;
  std::vector<std::string> warnings;

  [[nodiscard]] int outer_iterations() const { return static_cast<int>(outer.size()); }
};

struct DaippResult {
  ProxApproxSolution solution;
  DaippReport report;
};

/// Raised when an outer or inner cap is exhausted; carries the partial report.
class DaippNonconvergence : public NonconvergenceError {
 public:
  DaippNonconvergence(const std::string& what, DaippReport partial)
      : NonconvergenceError(what), report(std::move(partial)) {}
  DaippReport report;
};

/// Doubly accelerated inexact proximal point method started at x0 in dom h.
[[nodiscard]] DaippResult daipp_run(const CompositeProblem& prob, const DaippParams& params,
                                    const Vector& x0);

}  // namespace daipp
