#include "daipp/acg.hpp"

#include <algorithm>
#include <cmath>

namespace daipp {

double acg_objective(const AcgProblem& prob, const Vector& x) {
  const double n_part = prob.psi_n_eval(x);
  if (!(n_part < kInfinity)) return kInfinity;
  return prob.psi_s.eval(x) + n_part;
}

AcgState acg_init(const AcgProblem& prob, const Vector& z0) {
  check_point(z0, -1, "acg_init");
  Vector start = z0;
  if (prob.omega_projection) {
    start = prob.omega_projection(z0);
  } else if (!(prob.psi_n_eval(start) < kInfinity)) {
    // A prox with stepsize 1e-12 is the projection onto dom psi_n up to O(1e-12).
    start = prob.psi_n_prox(1e12, z0);
    if (!(prob.psi_n_eval(start) < kInfinity)) {
      throw SolverError("acg_init: prox did not return a point of dom psi_n");
    }
  }
  AcgState s;
  s.j = 0;
  s.B = 0.0;
  s.Gamma = AffineModel{Vector::Zero(start.size()), 0.0, start};
  s.z = start;
  s.y = start;
  s.y0 = start;
  s.u = Vector::Zero(start.size());
  s.eta = 0.0;
  s.psi_z = acg_objective(prob, start);
  return s;
}

double acg_next_B(double B, double mu, double L) {
  const double c = mu * B + 1.0;
  return B + (c + std::sqrt(c * c + 4.0 * L * c * B)) / (2.0 * L);
}

AcgState acg_step(const AcgProblem& prob, const AcgState& s) {
  const double L = prob.lipschitz;
  const double B_next = acg_next_B(s.B, prob.mu, L);
  const double keep = s.B / B_next;
  const double step = (B_next - s.B) / B_next;

  AcgState next;
  next.j = s.j + 1;
  next.B = B_next;
  next.y0 = s.y0;

  const Vector z_tilde = keep * s.z + step * s.y;
  const AffineModel lin = linearize(prob.psi_s, z_tilde, s.y0);
  next.Gamma.origin = s.y0;
  next.Gamma.slope = keep * s.Gamma.slope + step * lin.slope;
  next.Gamma.intercept = keep * s.Gamma.intercept + step * lin.intercept;

  // argmin Gamma(y) + psi_n(y) + |y - y0|^2 / (2B)
  //   = argmin psi_n(y) + |y - (y0 - B grad Gamma)|^2 / (2B).
  const Vector center = s.y0 - B_next * next.Gamma.slope;
  next.y = prob.psi_n_prox(1.0 / B_next, center);
  if (!next.y.allFinite()) throw SolverError("acg_step: prox returned a non-finite point");

  next.z = keep * s.z + step * next.y;
  next.u = (s.y0 - next.y) / B_next;

  const double psi_n_y = prob.psi_n_eval(next.y);
  next.psi_z = acg_objective(prob, next.z);
  if (!(psi_n_y < kInfinity) || !(next.psi_z < kInfinity)) {
    throw SolverError("acg_step: iterate left dom psi_n");
  }
  double eta = next.psi_z - next.Gamma(next.y) - psi_n_y - next.u.dot(next.z - next.y);
  if (eta < 0.0) {
    if (-eta > 1e-12 * (1.0 + std::abs(next.psi_z))) {
      throw SolverError("acg_step: negative certificate gap " + std::to_string(eta) +
                        " (is psi_s convex with the stated L?)");
    }
    eta = 0.0;
  }
  next.eta = eta;
  return next;
}

int acg_continue(const AcgProblem& prob, AcgState& state, const AcgStop& stop, int min_iters,
                 int max_iters) {
  int performed = 0;
  while (!(state.j >= min_iters && stop(state))) {
    if (state.j >= max_iters) {
      throw AcgNonconvergence("ACG: iteration cap " + std::to_string(max_iters) + " reached",
                              state);
    }
    state = acg_step(prob, state);
    ++performed;
  }
  return performed;
}

AcgCertificate certificate_of(const AcgState& s) {
  return AcgCertificate{s.z, s.u, s.eta, s.B, s.j};
}

AcgCertificate acg_run(const AcgProblem& prob, const Vector& z0, const AcgStop& stop,
                       int min_iters, int max_iters) {
  if (min_iters < 1 || max_iters < min_iters) {
    throw ParameterError("acg_run: need max_iters >= min_iters >= 1");
  }
  AcgState state = acg_init(prob, z0);
  acg_continue(prob, state, stop, min_iters, max_iters);
  return certificate_of(state);
}

bool hpe_check(const AcgState& s, const Vector& z0) {
  const double lhs = (s.B * s.u + s.z - z0).squaredNorm() + 2.0 * s.B * s.eta;
  const double rhs = (s.z - z0).squaredNorm();
  return lhs <= rhs + 1e-9 * (lhs + rhs);
}

double b_lower_bound(int j, double mu, double L) {
  const double quadratic = 0.25 * double(j) * double(j);
  const double geometric = std::pow(1.0 + std::sqrt(mu / (4.0 * L)), 2.0 * (j - 1));
  return std::max(quadratic, geometric) / L;
}

int min_inner_iterations(double L, double kappa, double alpha, double delta) {
  const double bound =
      2.0 * std::sqrt(L * (kappa + 1.0) / (kappa * alpha + (kappa + 1.0) * delta));
  return static_cast<int>(std::ceil(bound));
}

}  // namespace daipp
