#pragma once

#include <functional>
#include <string>

#include "daipp/problem.hpp"

namespace daipp {

/// Composite convex problem min psi_s + psi_n for the accelerated composite
/// gradient (ACG) method.
///
/// psi_s is convex with an L-Lipschitz gradient (L is `lipschitz`, not the
/// oracle's curvature fields). psi_n is mu-strongly convex and is accessed
/// only through `psi_n_prox(a, p)`, which must return
/// argmin_u { psi_n(u) + (a/2)|u - p|^2 } for any weight a > 0.
///
/// `omega_projection` maps the starting point onto the set where psi_s is
/// defined. When empty, starting points outside dom psi_n are pulled into it
/// with a prox call of weight 1e12.
struct AcgProblem {
  SmoothOracle psi_s;
  std::function<double(const Vector&)> psi_n_eval;
  std::function<Vector(double, const Vector&)> psi_n_prox;
  double lipschitz = 0.0;
  double mu = 0.0;
  std::function<Vector(const Vector&)> omega_projection;
};

/// Full ACG state after j iterations.
struct AcgState {
  int j = 0;
  double B = 0.0;
  AffineModel Gamma;  // convex combination of linearizations of psi_s
  Vector z;
  Vector y;
  Vector y0;
  Vector u;
  double eta = 0.0;
  double psi_z = 0.0;  // psi_s(z) + psi_n(z), kept for reporting
};

/// Output of a finished ACG run: u is an eta-subgradient of psi at z.
struct AcgCertificate {
  Vector z;
  Vector u;
  double eta = 0.0;
  double B = 0.0;
  int iterations = 0;
};

/// Raised when acg_run exhausts its iteration budget.
class AcgNonconvergence : public NonconvergenceError {
 public:
  AcgNonconvergence(const std::string& what, AcgState last)
      : NonconvergenceError(what), state(std::move(last)) {}
  AcgState state;
};

/// psi_s(x) + psi_n(x).
[[nodiscard]] double acg_objective(const AcgProblem& prob, const Vector& x);

/// Step 0: y = z = y0 = P(z0), B = 0, Gamma = 0.
[[nodiscard]] AcgState acg_init(const AcgProblem& prob, const Vector& z0);

/// Growth of the accelerated sequence: B_{j+1} from B_j.
[[nodiscard]] double acg_next_B(double B, double mu, double L);

/// One ACG iteration (steps 1 and 2).
[[nodiscard]] AcgState acg_step(const AcgProblem& prob, const AcgState& s);

using AcgStop = std::function<bool(const AcgState&)>;

/// Advances `state` in place until stop(state) holds and j >= min_iters.
/// Throws AcgNonconvergence once j reaches max_iters without stopping.
/// Returns the number of iterations performed by this call.
int acg_continue(const AcgProblem& prob, AcgState& state, const AcgStop& stop, int min_iters,
                 int max_iters);

/// Runs ACG from z0. See acg_continue for the stopping contract.
[[nodiscard]] AcgCertificate acg_run(const AcgProblem& prob, const Vector& z0, const AcgStop& stop,
                                     int min_iters, int max_iters);

[[nodiscard]] AcgCertificate certificate_of(const AcgState& s);

/// |B u + z - z0|^2 + 2 B eta <= |z - z0|^2, with relative slack 1e-9.
[[nodiscard]] bool hpe_check(const AcgState& s, const Vector& z0);

/// Lower bound on B_j: max{j^2/4, (1 + sqrt(mu / 4L))^{2(j-1)}} / L.
[[nodiscard]] double b_lower_bound(int j, double mu, double L);

/// Smallest integer j >= 2 sqrt(L(kappa+1) / (kappa alpha + (kappa+1) delta)).
[[nodiscard]] int min_inner_iterations(double L, double kappa, double alpha, double delta);

}  // namespace daipp
