#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "daipp/qp.hpp"
#include "daipp/refinement.hpp"
#include "daipp/solver.hpp"

namespace daipp {

struct RunConfig {
  std::string method = "daipp";  // "daipp" or "prox_grad"
  int l = 20;
  int n = 300;
  double M = 16777216.0;
  double m = 1048576.0;
  double rho = 1e-7;  // target for |v| / (|grad f(z0)| + 1)
  std::optional<double> lambda;
  std::optional<double> theta;
  std::optional<double> delta;
  std::uint64_t seed = 1;
  int max_outer = 100000;
  int max_inner = 1000000;
  int max_iters = 10000000;  // proximal gradient baseline
};

/// Throws ParameterError for an unknown method or nonpositive sizes.
void validate(const RunConfig& config);

/// One row of the benchmark table. M and m are the requested targets.
struct RunReport {
  std::string method;
  std::uint64_t seed = 0;
  int l = 0;
  int n = 0;
  double M = 0.0;
  double m = 0.0;
  double f_bar = 0.0;
  long long outer_iters = 0;
  long long inner_iters = 0;
  double residual = 0.0;
  double wall_ms = 0.0;
  bool converged = false;
  std::string message;
};

/// Tolerances and parameters handed to D-AIPP for a normalized target rho:
/// rho_hat = rho (|grad f(z0)| + 1), rho_bar = rho_hat / 4 and
/// eps_bar = rho_hat^2 / (32 (M + max(2m, 1/lambda))).
[[nodiscard]] DaippParams experiment_daipp_params(const RunConfig& config, double m, double M,
                                                  double grad0_norm);

struct BaselineResult {
  StationaryPair pair;
  long long iterations = 0;
  double residual = 0.0;
  bool converged = false;
};

/// z+ = prox_{h/M}(z - grad f(z)/M) until the pair (z+, v) produced by the
/// step has |v| / (|grad f(z0)| + 1) <= rho.
[[nodiscard]] BaselineResult prox_grad_baseline(const CompositeProblem& prob, const Vector& z0,
                                                double rho, long long max_iters);

/// Everything produced by one D-AIPP benchmark run.
struct DaippExperiment {
  DaippParams params;
  std::optional<DaippResult> result;
  std::optional<DaippReport> partial;  // set on nonconvergence
  StationaryPair pair;
  double grad0_norm = 0.0;
  RunReport report;
};

[[nodiscard]] DaippExperiment run_daipp_experiment(const QpInstance& qp, const RunConfig& config);

/// Runs the configured method on an already generated instance.
[[nodiscard]] RunReport run_on_instance(const QpInstance& qp, const RunConfig& config);

/// Generates the instance and runs the configured method from the centroid.
[[nodiscard]] RunReport run_experiment(const RunConfig& config);

/// CSV with columns seed,l,n,M,m,method,f_bar,outer_iters,inner_iters,residual,wall_ms.
/// Floating-point fields use 17 significant digits so parsing is lossless.
[[nodiscard]] std::string emit_csv(const std::vector<RunReport>& reports, bool header = true);

/// Aligned text table: one row per instance with shared M, m, f_bar columns
/// and one iteration-count column per method (total inner iterations).
[[nodiscard]] std::string emit_table(const std::vector<RunReport>& reports);

/// Inverse of emit_csv for the columns it writes.
[[nodiscard]] std::vector<RunReport> parse_csv(const std::string& text);

inline const char* kCsvHeader = "seed,l,n,M,m,method,f_bar,outer_iters,inner_iters,residual,wall_ms";

}  // namespace daipp
