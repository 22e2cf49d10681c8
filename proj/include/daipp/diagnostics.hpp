#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "daipp/problem.hpp"
#include "daipp/refinement.hpp"
#include "daipp/solver.hpp"

namespace daipp {

/// One checked inequality: observed <= bound.
struct BoundReport {
  std::string theorem_id;
  double bound_value = 0.0;
  double observed_value = 0.0;
  bool satisfied = false;
  double margin = 0.0;  // bound - observed
};

/// Builds a report; satisfied when observed <= bound + 1e-9 max(|bound|, |observed|).
[[nodiscard]] BoundReport make_report(std::string id, double bound, double observed);

/// The report with the smallest relative margin, relabeled `id`.
[[nodiscard]] BoundReport worst_of(const std::vector<BoundReport>& reports, std::string id);

/// GAIPP framework parameters (alpha, theta, kappa, delta).
struct GaippSetting {
  double alpha = 0.0;
  double theta = 0.0;
  double kappa = 0.0;
  double delta = 0.0;
};

/// D-AIPP viewed as GAIPP: alpha = xi/2, kappa = 1/2.
[[nodiscard]] GaippSetting gaipp_setting_of(const DaippParams& params, double m);

struct GaippConstants {
  double beta = 0.0;
  double tau0 = 0.0;
  double c0 = 0.0;
};

[[nodiscard]] GaippConstants gaipp_constants(double alpha, double theta, double kappa,
                                             double delta);

/// min_{i<k} |y_{i+1} - x_tilde_i|^2 / lambda^2 against the GAIPP residual bound.
/// Uses the recorded step-2 residuals.
[[nodiscard]] BoundReport residual_bound_thm22(const std::vector<OuterRecord>& trajectory,
                                               double lambda, const GaippSetting& setting,
                                               double D, int k);

/// D^2/(lam^2 rho^2) + delta^2 D/(lam rho) + (delta D^2/(lam^2 rho^2))^{1/3} + 1.
[[nodiscard]] double outer_bound_cor23(double D, double lambda_lb, double rho, double delta);

/// max{log t, 1}.
[[nodiscard]] double log_plus_one(double t);

/// sqrt(lam M + 1) [D^2/(lam^2 rho^2) + log+_1(rho sqrt(lam^2 M + lam) / sqrt(eps))].
[[nodiscard]] double total_bound_thm36(double lambda, double M, double D, double rho_bar,
                                       double eps_bar);

/// Worst of A_k >= k^2/4, sum A_{i+1} >= k^3/12, sum a_i / sum A_{i+1} <= 4/k
/// over k = 1..k_max, as the ratio lhs/rhs against 1.
[[nodiscard]] BoundReport sequence_estimates_check(int k_max);

/// max_k |A_{k+1} - a_k^2| / a_k^2 against 1e-10.
[[nodiscard]] BoundReport outer_relation_check(int k_max);

/// gamma_k(u) <= lambda phi(u) + (1-theta)/2 |u - x_tilde|^2 at each sample.
[[nodiscard]] BoundReport gamma_minorant_check(const CompositeProblem& prob, const OuterRecord& rec,
                                               double lambda, const GaippSetting& setting,
                                               const std::vector<Vector>& u_samples);

/// |v + delta (y - x_tilde)|^2/(alpha+delta) + 2 eps_tilde <= (kappa alpha + delta) |y - x_tilde|^2.
[[nodiscard]] BoundReport frame_inequality_check(double alpha, double kappa, double delta,
                                                 const Vector& y, const Vector& v,
                                                 double eps_tilde, const Vector& x_tilde);

/// |x_k - xbar| <= tau0^k |x_0 - xbar| + beta D/(1 - tau0) for every recorded k >= 1.
[[nodiscard]] BoundReport boundedness_check(const std::vector<OuterRecord>& trajectory,
                                            const GaippSetting& setting, double D,
                                            const Vector& xbar);

/// w is an eps-subgradient of phi + |. - z_minus|^2/(2 lambda) at z, tested at samples.
/// observed = model value, bound = function value at the worst sample.
[[nodiscard]] BoundReport subgradient_sampled_check(const CompositeProblem& prob,
                                                    const ProxApproxSolution& sol,
                                                    const std::vector<Vector>& u_samples);

/// `count` Dirichlet(1,...,1) points.
[[nodiscard]] std::vector<Vector> simplex_samples(int n, int count, std::uint64_t seed);

/// Every check applicable to a finished run (trajectory must be recorded).
[[nodiscard]] std::vector<BoundReport> replay(const CompositeProblem& prob,
                                              const DaippParams& params, const DaippResult& result,
                                              std::uint64_t sample_seed = 7);

/// One line per check: id, bound, observed, margin, status.
[[nodiscard]] std::string format_reports(const std::vector<BoundReport>& reports);

[[nodiscard]] bool all_satisfied(const std::vector<BoundReport>& reports);

}  // namespace daipp
