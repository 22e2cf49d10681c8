#include "daipp/refinement.hpp"

#include <cmath>

namespace daipp {

StationaryPair composite_gradient_step(const CompositeProblem& prob, const Vector& z,
                                       double weight) {
  if (!(weight > 0.0)) throw ParameterError("composite_gradient_step: weight must be positive");
  check_point(z, prob.dimension, "refine");
  const Vector grad_z = prob.smooth.grad(z);
  // l_f(u; z) + h(u) + (weight/2)|u - z|^2 is a prox of h centred at z - grad/weight.
  const Vector center = z - grad_z / weight;
  StationaryPair pair;
  pair.z_hat = prob.nonsmooth.prox(1.0 / weight, center);
  if (!pair.z_hat.allFinite()) throw SolverError("refine: prox returned a non-finite point");
  const Vector q = weight * (z - pair.z_hat);
  pair.v_hat = q + prob.smooth.grad(pair.z_hat) - grad_z;
  pair.q_norm = q.norm();
  pair.residual = pair.v_hat.norm();
  return pair;
}

StationaryPair refine(const CompositeProblem& prob, const ProxApproxSolution& sol) {
  if (!(sol.lambda > 0.0)) throw ParameterError("refine: lambda must be positive");
  return composite_gradient_step(prob, sol.z, prob.smooth.curvature_upper + 1.0 / sol.lambda);
}

double stationarity_residual(const CompositeProblem& prob, const StationaryPair& pair,
                             const Vector& z0) {
  return pair.v_hat.norm() / (prob.smooth.grad(z0).norm() + 1.0);
}

double refined_residual_bound(double rho_bar, double eps_bar, double M, double lambda) {
  return 2.0 * (rho_bar + std::sqrt(2.0 * eps_bar * (M + 1.0 / lambda)));
}

}  // namespace daipp
