#include "daipp/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

namespace daipp {

BoundReport make_report(std::string id, double bound, double observed) {
  BoundReport r;
  r.theorem_id = std::move(id);
  r.bound_value = bound;
  r.observed_value = observed;
  r.margin = bound - observed;
  const double slack = 1e-9 * std::max(std::abs(bound), std::abs(observed));
  r.satisfied = observed <= bound + slack;
  return r;
}

namespace {

double relative_margin(const BoundReport& r) {
  const double scale = std::max({std::abs(r.bound_value), std::abs(r.observed_value),
                                 std::numeric_limits<double>::min()});
  return r.margin / scale;
}

}  // namespace

BoundReport worst_of(const std::vector<BoundReport>& reports, std::string id) {
  if (reports.empty()) return make_report(std::move(id), 0.0, 0.0);
  const BoundReport* worst = &reports.front();
  for (const BoundReport& r : reports) {
    // an unsatisfied report always wins
    if (worst->satisfied && !r.satisfied) {
      worst = &r;
    } else if (worst->satisfied == r.satisfied && relative_margin(r) < relative_margin(*worst)) {
      worst = &r;
    }
  }
  BoundReport out = *worst;
  out.theorem_id = std::move(id);
  return out;
}

GaippSetting gaipp_setting_of(const DaippParams& params, double m) {
  return GaippSetting{0.5 * params.xi(m), params.theta, 0.5, params.delta};
}

GaippConstants gaipp_constants(double alpha, double theta, double kappa, double delta) {
  if (!(theta > 0.0 && theta < alpha && alpha <= 1.0)) {
    throw ParameterError("gaipp_constants: need 0 < theta < alpha <= 1");
  }
  if (!(kappa > 0.0 && kappa < 1.0)) throw ParameterError("gaipp_constants: need 0 < kappa < 1");
  if (!(delta >= 0.0) || !std::isfinite(delta)) {
    throw ParameterError("gaipp_constants: need delta >= 0");
  }
  GaippConstants c;
  c.beta = 3.0 + 4.0 * (theta + delta) / (alpha - theta);
  c.tau0 = std::sqrt(kappa * alpha + delta) / std::sqrt(alpha + delta);
  c.c0 = 4.0 * (1.0 - theta) * c.beta * c.beta / ((1.0 - c.tau0) * (1.0 - c.tau0));
  return c;
}

BoundReport residual_bound_thm22(const std::vector<OuterRecord>& trajectory, double lambda,
                                 const GaippSetting& s, double D, int k) {
  if (k < 1 || k > static_cast<int>(trajectory.size())) {
    throw ParameterError("residual_bound_thm22: need 1 <= k <= trajectory length");
  }
  const GaippConstants c = gaipp_constants(s.alpha, s.theta, s.kappa, s.delta);
  double min_sq = kInfinity;
  double sum_a = 0.0;
  double sum_A_next = 0.0;
  for (int i = 0; i < k; ++i) {
    const OuterRecord& rec = trajectory[i];
    min_sq = std::min(min_sq, rec.residual * rec.residual);
    sum_a += rec.a;
    sum_A_next += rec.A + rec.a;
  }
  const double numer = (s.theta + s.delta + c.c0 * k + 2.0 * (1.0 - s.theta) * sum_a) * D * D;
  const double denom = (1.0 - s.kappa * s.alpha) * sum_A_next * lambda * lambda;
  return make_report("residual_bound[k=" + std::to_string(k) + "]", numer / denom, min_sq);
}

double outer_bound_cor23(double D, double lambda_lb, double rho, double delta) {
  const double t = D * D / (lambda_lb * lambda_lb * rho * rho);
  return t + delta * delta * D / (lambda_lb * rho) + std::cbrt(delta * t) + 1.0;
}

double log_plus_one(double t) { return std::max(std::log(t), 1.0); }

double total_bound_thm36(double lambda, double M, double D, double rho_bar, double eps_bar) {
  const double arg = rho_bar * std::sqrt(lambda * lambda * M + lambda) / std::sqrt(eps_bar);
  return std::sqrt(lambda * M + 1.0) *
         (D * D / (lambda * lambda * rho_bar * rho_bar) + log_plus_one(arg));
}

BoundReport sequence_estimates_check(int k_max) {
  if (k_max < 1) throw ParameterError("sequence_estimates_check: need k_max >= 1");
  double A = 0.0;
  double sum_a = 0.0;
  double sum_A = 0.0;
  double worst = -kInfinity;
  for (int k = 1; k <= k_max; ++k) {
    const OuterCoefficients c = outer_coefficients(A);
    sum_a += c.a;
    sum_A += c.A_next;
    A = c.A_next;  // now A_k
    const double kk = k;
    worst = std::max(worst, (kk * kk / 4.0) / A);
    worst = std::max(worst, (kk * kk * kk / 12.0) / sum_A);
    worst = std::max(worst, (sum_a / sum_A) / (4.0 / kk));
  }
  return make_report("sequence_estimates", 1.0, worst);
}

BoundReport outer_relation_check(int k_max) {
  if (k_max < 1) throw ParameterError("outer_relation_check: need k_max >= 1");
  double A = 0.0;
  double worst = 0.0;
  for (int k = 0; k < k_max; ++k) {
    const OuterCoefficients c = outer_coefficients(A);
    worst = std::max(worst, std::abs(c.A_next - c.a * c.a) / (c.a * c.a));
    A = c.A_next;
  }
  return make_report("outer.A_next=a^2", 1e-10, worst);
}

BoundReport gamma_minorant_check(const CompositeProblem& prob, const OuterRecord& rec,
                                 double lambda, const GaippSetting& s,
                                 const std::vector<Vector>& u_samples) {
  const Vector& y = rec.y_next;
  const Vector& xt = rec.x_tilde;
  if (y.size() == 0 || xt.size() == 0) {
    throw ParameterError("gamma_minorant_check: record carries no trajectory vectors");
  }
  const double phi_tilde_y = lambda * composite_value(prob, y) + 0.5 * (y - xt).squaredNorm();
  std::vector<BoundReport> all;
  all.reserve(u_samples.size());
  for (const Vector& u : u_samples) {
    const double gamma = phi_tilde_y + rec.v_tilde.dot(u - y) +
                         0.5 * s.alpha * (u - y).squaredNorm() -
                         0.5 * s.theta * (u - xt).squaredNorm() - rec.eps_tilde;
    const double rhs =
        lambda * composite_value(prob, u) + 0.5 * (1.0 - s.theta) * (u - xt).squaredNorm();
    all.push_back(make_report("", rhs, gamma));
  }
  return worst_of(all, "gamma_minorant[k=" + std::to_string(rec.k) + "]");
}

BoundReport frame_inequality_check(double alpha, double kappa, double delta, const Vector& y,
                                   const Vector& v, double eps_tilde, const Vector& x_tilde) {
  const Vector d = y - x_tilde;
  const double lhs = (v + delta * d).squaredNorm() / (alpha + delta) + 2.0 * eps_tilde;
  const double rhs = (kappa * alpha + delta) * d.squaredNorm();
  return make_report("frame", rhs, lhs);
}

BoundReport boundedness_check(const std::vector<OuterRecord>& trajectory, const GaippSetting& s,
                              double D, const Vector& xbar) {
  const GaippConstants c = gaipp_constants(s.alpha, s.theta, s.kappa, s.delta);
  if (trajectory.empty()) return make_report("boundedness", 0.0, 0.0);
  const double d0 = (trajectory.front().x - xbar).norm();
  std::vector<BoundReport> all;
  for (const OuterRecord& rec : trajectory) {
    if (rec.k < 1) continue;
    const double bound = std::pow(c.tau0, rec.k) * d0 + c.beta * D / (1.0 - c.tau0);
    all.push_back(make_report("", bound, (rec.x - xbar).norm()));
  }
  return worst_of(all, "boundedness");
}

BoundReport subgradient_sampled_check(const CompositeProblem& prob, const ProxApproxSolution& sol,
                                      const std::vector<Vector>& u_samples) {
  const double inv2l = 0.5 / sol.lambda;
  const double at_z = composite_value(prob, sol.z) + inv2l * (sol.z - sol.z_minus).squaredNorm();
  std::vector<BoundReport> all;
  all.reserve(u_samples.size());
  for (const Vector& u : u_samples) {
    const double model = at_z + sol.w.dot(u - sol.z) - sol.eps;
    const double value = composite_value(prob, u) + inv2l * (u - sol.z_minus).squaredNorm();
    all.push_back(make_report("", value, model));
  }
  return worst_of(all, "prox-approx.subgradient");
}

std::vector<Vector> simplex_samples(int n, int count, std::uint64_t seed) {
  Sampler rng(seed);
  std::vector<Vector> out;
  out.reserve(count);
  for (int i = 0; i < count; ++i) out.push_back(rng.simplex_point(n));
  return out;
}

std::vector<BoundReport> replay(const CompositeProblem& prob, const DaippParams& params,
                                const DaippResult& result, std::uint64_t sample_seed) {
  const double m = prob.smooth.curvature_lower;
  const double M = prob.smooth.curvature_upper;
  const double D = prob.diameter;
  const double lambda = params.lambda;
  const GaippSetting s = gaipp_setting_of(params, m);
  const DaippReport& rep = result.report;
  const auto& traj = rep.outer;
  const int K = rep.outer_iterations();
  if (K == 0) throw ParameterError("replay: empty trajectory");
  if (traj.back().y_next.size() == 0) throw ParameterError("replay: trajectory not recorded");

  std::vector<BoundReport> out;

  std::vector<BoundReport> thm22;
  for (int k = 1; k <= K; ++k) thm22.push_back(residual_bound_thm22(traj, lambda, s, D, k));
  out.push_back(worst_of(thm22, "residual_bound"));

  std::vector<BoundReport> frames;
  for (const OuterRecord& rec : traj) {
    frames.push_back(frame_inequality_check(s.alpha, s.kappa, s.delta, rec.y_next, rec.v_tilde,
                                            rec.eps_tilde, rec.x_tilde));
  }
  out.push_back(worst_of(frames, "frame(alpha=xi/2,kappa=1/2)"));

  const std::vector<Vector> samples = simplex_samples(prob.dimension, 100, sample_seed);
  std::vector<BoundReport> gammas;
  for (const OuterRecord& rec : traj) {
    gammas.push_back(gamma_minorant_check(prob, rec, lambda, s, samples));
  }
  out.push_back(worst_of(gammas, "gamma_minorant"));

  out.push_back(boundedness_check(traj, s, D, result.solution.z));
  out.push_back(sequence_estimates_check(K));
  out.push_back(outer_relation_check(K));

  int min_step1 = std::numeric_limits<int>::max();
  for (const OuterRecord& rec : traj) min_step1 = std::min(min_step1, rec.inner_iterations);
  min_step1 = std::min(min_step1, traj.back().inner_iterations - rep.final_extra_iterations);
  // floor <= fewest step-1 iterations
  out.push_back(make_report("inner.floor", min_step1, rep.inner_floor));

  const ProxApproxSolution& sol = result.solution;
  out.push_back(make_report("step3.eta", lambda * params.eps_bar, lambda * sol.eps));
  out.push_back(make_report("step3.distance", lambda * params.rho_bar, (sol.z - sol.z_minus).norm()));
  out.push_back(make_report("prox-approx.residual", params.rho_bar,
                            (sol.z_minus - sol.z).norm() / lambda));
  out.push_back(make_report("prox-approx.eps", params.eps_bar, sol.eps));
  out.push_back(subgradient_sampled_check(prob, sol, samples));

  const StationaryPair pair = refine(prob, sol);
  out.push_back(make_report("refined.v<=2q", 2.0 * pair.q_norm, pair.residual));
  out.push_back(make_report("refined.2q<=bound",
                            refined_residual_bound(params.rho_bar, params.eps_bar, M, lambda),
                            2.0 * pair.q_norm));

  out.push_back(make_report("total_inner(x100)",
                            100.0 * total_bound_thm36(lambda, M, D, params.rho_bar, params.eps_bar),
                            rep.total_inner_iterations));
  out.push_back(make_report("outer_count(x100)",
                            100.0 * outer_bound_cor23(D, lambda, params.rho_bar, params.delta), K));
  const double extra_arg = params.rho_bar * std::sqrt(lambda * lambda * M + lambda) /
                           std::sqrt(params.eps_bar);
  out.push_back(make_report("step3.extra(x100)",
                            100.0 * std::sqrt(lambda * M + 1.0) * log_plus_one(extra_arg),
                            rep.final_extra_iterations));
  return out;
}

std::string format_reports(const std::vector<BoundReport>& reports) {
  std::size_t width = 0;
  for (const BoundReport& r : reports) width = std::max(width, r.theorem_id.size());
  std::ostringstream out;
  char buf[160];
  for (const BoundReport& r : reports) {
    std::snprintf(buf, sizeof(buf), "  bound=%-13.6e observed=%-13.6e margin=%-13.6e %s",
                  r.bound_value, r.observed_value, r.margin, r.satisfied ? "ok" : "VIOLATED");
    out << r.theorem_id << std::string(width - r.theorem_id.size(), ' ') << buf << '\n';
  }
  return out.str();
}

bool all_satisfied(const std::vector<BoundReport>& reports) {
  return std::all_of(reports.begin(), reports.end(),
                     [](const BoundReport& r) { return r.satisfied; });
}

}  // namespace daipp
