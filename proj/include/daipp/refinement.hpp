#pragma once

#include "daipp/problem.hpp"
#include "daipp/solver.hpp"

namespace daipp {

/// (z_hat, v_hat) with v_hat in grad f(z_hat) + dh(z_hat).
struct StationaryPair {
  Vector z_hat;
  Vector v_hat;
  double q_norm = 0.0;
  double residual = 0.0;  // |v_hat|
};

/// One composite gradient step from the prox-approximate point sol.z:
///   z_f = argmin_u { l_f(u; z) + h(u) + (M + 1/lambda)/2 |u - z|^2 }
///   q_f = (M + 1/lambda)(z - z_f),  v_f = q_f + grad f(z_f) - grad f(z).
[[nodiscard]] StationaryPair refine(const CompositeProblem& prob, const ProxApproxSolution& sol);

/// Same step with an explicit curvature weight (M + 1/lambda above).
[[nodiscard]] StationaryPair composite_gradient_step(const CompositeProblem& prob, const Vector& z,
                                                     double weight);

/// |v_hat| / (|grad f(z0)| + 1).
[[nodiscard]] double stationarity_residual(const CompositeProblem& prob, const StationaryPair& pair,
                                           const Vector& z0);

/// 2 (rho_bar + sqrt(2 eps_bar (M + 1/lambda))), the guaranteed bound on |v_f|.
[[nodiscard]] double refined_residual_bound(double rho_bar, double eps_bar, double M,
                                            double lambda);

}  // namespace daipp
