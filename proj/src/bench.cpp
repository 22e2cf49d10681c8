#include "daipp/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>
#include <tuple>

namespace daipp {

void validate(const RunConfig& config) {
  if (config.method != "daipp" && config.method != "prox_grad") {
    throw ParameterError("unknown method '" + config.method + "' (expected daipp or prox_grad)");
  }
  if (config.l < 1 || config.n < 1) throw ParameterError("l and n must be positive");
  if (!(config.m > 0.0) || !(config.M >= config.m)) throw ParameterError("need M >= m > 0");
  if (!(config.rho > 0.0)) throw ParameterError("rho must be positive");
  if (config.max_outer < 1 || config.max_inner < 1 || config.max_iters < 0) {
    throw ParameterError("iteration caps must be positive");
  }
}

DaippParams experiment_daipp_params(const RunConfig& config, double m, double M,
                                    double grad0_norm) {
  const double rho_hat = config.rho * (grad0_norm + 1.0);
  DaippParams p = experiment_params(m, M, 0.0, 0.0);
  if (config.lambda) {
    p.lambda = *config.lambda;
    p.theta = 0.49 * p.xi(m);
    p.delta = std::max(0.0, 0.9 * std::pow(M / m, 1.0 / 7.0) - p.theta);
  }
  p.mode = p.lambda * m <= 0.5 ? LambdaMode::kStrict : LambdaMode::kLoose;
  if (config.theta) p.theta = *config.theta;
  if (config.delta) p.delta = *config.delta;
  p.rho_bar = rho_hat / 4.0;
  p.eps_bar = rho_hat * rho_hat / (32.0 * (M + std::max(2.0 * m, 1.0 / p.lambda)));
  p.max_outer = config.max_outer;
  p.max_inner = config.max_inner;
  return p;
}

BaselineResult prox_grad_baseline(const CompositeProblem& prob, const Vector& z0, double rho,
                                  long long max_iters) {
  const double M = prob.smooth.curvature_upper;
  if (!(M > 0.0)) throw ParameterError("prox_grad_baseline: M must be positive");
  const double scale = prob.smooth.grad(z0).norm() + 1.0;
  BaselineResult out;
  Vector z = z0;
  for (long long it = 0;; ++it) {
    out.pair = composite_gradient_step(prob, z, M);
    out.iterations = it;
    out.residual = out.pair.residual / scale;
    if (out.residual <= rho) {
      out.converged = true;
      return out;
    }
    if (it >= max_iters) return out;
    z = out.pair.z_hat;
  }
}

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

RunReport blank_report(const QpInstance& qp, const RunConfig& config) {
  RunReport r;
  r.method = config.method;
  r.seed = config.seed;
  r.l = qp.l();
  r.n = qp.n();
  r.M = config.M;
  r.m = config.m;
  return r;
}

}  // namespace

DaippExperiment run_daipp_experiment(const QpInstance& qp, const RunConfig& config) {
  const auto start = Clock::now();
  const CompositeProblem prob = qp.problem();
  const Vector z0 = simplex_centroid(qp.n());

  DaippExperiment ex;
  ex.report = blank_report(qp, config);
  ex.report.method = "daipp";
  ex.grad0_norm = prob.smooth.grad(z0).norm();
  ex.params = experiment_daipp_params(config, qp.m, qp.M, ex.grad0_norm);
  try {
    ex.result = daipp_run(prob, ex.params, z0);
  } catch (const DaippNonconvergence& e) {
    ex.partial = e.report;
    ex.report.outer_iters = e.report.outer_iterations();
    ex.report.inner_iters = e.report.total_inner_iterations;
    ex.report.message = e.what();
    ex.report.wall_ms = elapsed_ms(start);
    return ex;
  }
  const DaippReport& rep = ex.result->report;
  ex.pair = refine(prob, ex.result->solution);
  ex.report.outer_iters = rep.outer_iterations();
  ex.report.inner_iters = rep.total_inner_iterations;
  ex.report.residual = ex.pair.residual / (ex.grad0_norm + 1.0);
  ex.report.f_bar = composite_value(prob, ex.pair.z_hat);
  ex.report.converged = ex.report.residual <= config.rho;
  if (!ex.report.converged) ex.report.message = "refined residual above target";
  ex.report.wall_ms = elapsed_ms(start);
  return ex;
}

RunReport run_on_instance(const QpInstance& qp, const RunConfig& config) {
  validate(config);
  if (config.method == "daipp") return run_daipp_experiment(qp, config).report;

  const auto start = Clock::now();
  const CompositeProblem prob = qp.problem();
  RunReport r = blank_report(qp, config);
  const BaselineResult base = prox_grad_baseline(prob, simplex_centroid(qp.n()), config.rho,
                                                 config.max_iters);
  r.outer_iters = base.iterations;
  r.inner_iters = base.iterations;
  r.residual = base.residual;
  r.f_bar = composite_value(prob, base.pair.z_hat);
  r.converged = base.converged;
  if (!base.converged) r.message = "iteration cap reached";
  r.wall_ms = elapsed_ms(start);
  return r;
}

RunReport run_experiment(const RunConfig& config) {
  validate(config);
  const QpInstance qp = generate_qp(config.l, config.n, config.M, config.m, config.seed);
  return run_on_instance(qp, config);
}

namespace {

std::string fmt_exact(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string fmt_ms(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.3f", v);
  return buf;
}

std::string fmt_sci(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.2E", v);
  return buf;
}

std::string fmt_general(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.10g", v);
  return buf;
}

}  // namespace

std::string emit_csv(const std::vector<RunReport>& reports, bool header) {
  std::ostringstream out;
  if (header) out << kCsvHeader << '\n';
  for (const RunReport& r : reports) {
    out << r.seed << ',' << r.l << ',' << r.n << ',' << fmt_exact(r.M) << ',' << fmt_exact(r.m)
        << ',' << r.method << ',' << fmt_exact(r.f_bar) << ',' << r.outer_iters << ','
        << r.inner_iters << ',' << fmt_exact(r.residual) << ',' << fmt_ms(r.wall_ms) << '\n';
  }
  return out.str();
}

std::string emit_table(const std::vector<RunReport>& reports) {
  using Key = std::tuple<std::uint64_t, int, int, double, double>;
  std::vector<Key> keys;
  std::vector<std::string> methods;
  std::map<Key, std::map<std::string, const RunReport*>> cells;
  for (const RunReport& r : reports) {
    const Key key{r.seed, r.l, r.n, r.M, r.m};
    if (std::find(keys.begin(), keys.end(), key) == keys.end()) keys.push_back(key);
    if (std::find(methods.begin(), methods.end(), r.method) == methods.end()) {
      methods.push_back(r.method);
    }
    cells[key].emplace(r.method, &r);
  }

  std::vector<std::string> head{"M", "m", "f_bar"};
  head.insert(head.end(), methods.begin(), methods.end());
  std::vector<std::vector<std::string>> rows;
  for (const Key& key : keys) {
    const auto& row_cells = cells[key];
    std::vector<std::string> row{fmt_general(std::get<3>(key)), fmt_general(std::get<4>(key)),
                                 fmt_sci(row_cells.begin()->second->f_bar)};
    for (const std::string& method : methods) {
      const auto it = row_cells.find(method);
      if (it == row_cells.end()) {
        row.emplace_back("-");
      } else {
        std::string count = std::to_string(it->second->inner_iters);
        if (!it->second->converged) count += "*";
        row.push_back(std::move(count));
      }
    }
    rows.push_back(std::move(row));
  }

  std::vector<std::size_t> width(head.size());
  for (std::size_t c = 0; c < head.size(); ++c) {
    width[c] = head[c].size();
    for (const auto& row : rows) width[c] = std::max(width[c], row[c].size());
  }
  std::ostringstream out;
  auto emit_row = [&](const std::vector<std::string>& cells_row) {
    for (std::size_t c = 0; c < cells_row.size(); ++c) {
      if (c > 0) out << "  ";
      out << std::string(width[c] - cells_row[c].size(), ' ') << cells_row[c];
    }
    out << '\n';
  };
  emit_row(head);
  std::size_t total = 0;
  for (std::size_t w : width) total += w;
  out << std::string(total + 2 * (width.size() - 1), '-') << '\n';
  for (const auto& row : rows) emit_row(row);
  return out.str();
}

std::vector<RunReport> parse_csv(const std::string& text) {
  std::vector<RunReport> out;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line.rfind("seed,", 0) == 0) continue;
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) fields.push_back(field);
    if (fields.size() != 11) throw DomainError("parse_csv: expected 11 fields in '" + line + "'");
    RunReport r;
    r.seed = std::stoull(fields[0]);
    r.l = std::stoi(fields[1]);
    r.n = std::stoi(fields[2]);
    r.M = std::stod(fields[3]);
    r.m = std::stod(fields[4]);
    r.method = fields[5];
    r.f_bar = std::stod(fields[6]);
    r.outer_iters = std::stoll(fields[7]);
    r.inner_iters = std::stoll(fields[8]);
    r.residual = std::stod(fields[9]);
    r.wall_ms = std::stod(fields[10]);
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace daipp
