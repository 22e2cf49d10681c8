// daipp: generate QP instances, run D-AIPP or the proximal gradient baseline,
// and replay diagnostics.

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "daipp/bench.hpp"
#include "daipp/diagnostics.hpp"
#include "daipp/qp.hpp"

namespace {

using nlohmann::json;

// Values given on the command line. Unset ones fall back to the JSON config,
// then to RunConfig defaults.
struct Flags {
  std::string config_path;
  std::optional<std::string> method;
  std::optional<int> l, n;
  std::optional<double> M, m, rho;
  std::optional<double> lambda, theta, delta;
  std::optional<std::uint64_t> seed;
  std::optional<int> max_outer, max_inner, max_iters;
  std::optional<std::string> out;
};

void add_run_flags(CLI::App* cmd, Flags& f) {
  cmd->add_option("--config", f.config_path, "JSON file with the same keys as the flags")
      ->check(CLI::ExistingFile);
  cmd->add_option("--method", f.method, "daipp or prox_grad");
  cmd->add_option("--l", f.l, "rows of A");
  cmd->add_option("--n", f.n, "dimension");
  cmd->add_option("--M", f.M, "target upper curvature");
  cmd->add_option("--m", f.m, "target lower curvature");
  cmd->add_option("--rho", f.rho, "target for |v| / (|grad f(z0)| + 1)");
  cmd->add_option("--seed", f.seed, "instance seed");
  cmd->add_option("--lambda", f.lambda, "override lambda");
  cmd->add_option("--theta", f.theta, "override theta");
  cmd->add_option("--delta", f.delta, "override delta");
  cmd->add_option("--max-outer,--max_outer", f.max_outer, "D-AIPP outer cap");
  cmd->add_option("--max-inner,--max_inner", f.max_inner, "ACG cap per call");
  cmd->add_option("--max-iters,--max_iters", f.max_iters, "baseline iteration cap");
  cmd->add_option("--out", f.out, "output file");
}

template <class T>
void take(const json& j, const char* key, T& dst) {
  if (j.contains(key) && !j.at(key).is_null()) dst = j.at(key).get<T>();
}

template <class T>
void take(const json& j, const char* key, std::optional<T>& dst) {
  if (j.contains(key) && !j.at(key).is_null()) dst = j.at(key).get<T>();
}

template <class T, class U>
void override_with(const std::optional<T>& flag, U& dst) {
  if (flag) dst = *flag;
}

struct Resolved {
  daipp::RunConfig config;
  std::optional<std::string> out;
};

Resolved resolve(const Flags& f) {
  Resolved r;
  daipp::RunConfig& c = r.config;
  if (!f.config_path.empty()) {
    std::ifstream in(f.config_path);
    const json j = json::parse(in);
    if (!j.is_object()) throw daipp::ParameterError("config must be a flat JSON object");
    static const std::vector<std::string> known{"method", "l", "n", "M", "m", "rho", "seed",
                                                "lambda", "theta", "delta", "max_outer",
                                                "max_inner", "max_iters", "out"};
    for (const auto& item : j.items()) {
      if (std::find(known.begin(), known.end(), item.key()) == known.end()) {
        throw daipp::ParameterError("unknown config key '" + item.key() + "'");
      }
    }
    take(j, "method", c.method);
    take(j, "l", c.l);
    take(j, "n", c.n);
    take(j, "M", c.M);
    take(j, "m", c.m);
    take(j, "rho", c.rho);
    take(j, "seed", c.seed);
    take(j, "lambda", c.lambda);
    take(j, "theta", c.theta);
    take(j, "delta", c.delta);
    take(j, "max_outer", c.max_outer);
    take(j, "max_inner", c.max_inner);
    take(j, "max_iters", c.max_iters);
    take(j, "out", r.out);
  }
  override_with(f.method, c.method);
  override_with(f.l, c.l);
  override_with(f.n, c.n);
  override_with(f.M, c.M);
  override_with(f.m, c.m);
  override_with(f.rho, c.rho);
  override_with(f.seed, c.seed);
  if (f.lambda) c.lambda = f.lambda;
  if (f.theta) c.theta = f.theta;
  if (f.delta) c.delta = f.delta;
  override_with(f.max_outer, c.max_outer);
  override_with(f.max_inner, c.max_inner);
  override_with(f.max_iters, c.max_iters);
  if (f.out) r.out = f.out;
  daipp::validate(c);
  return r;
}

void write_output(const std::optional<std::string>& path, const std::string& text) {
  if (!path) {
    std::cout << text;
    return;
  }
  std::ofstream out(*path);
  if (!out) throw daipp::Error("cannot open '" + *path + "' for writing");
  out << text;
}

json matrix_json(const daipp::Matrix& A) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < A.rows(); ++i) {
    rows.push_back(std::vector<double>(A.row(i).begin(), A.row(i).end()));
  }
  return rows;
}

std::vector<double> vector_json(const daipp::Vector& v) { return {v.begin(), v.end()}; }

int cmd_generate(const Resolved& r) {
  const daipp::RunConfig& c = r.config;
  const daipp::QpInstance qp = daipp::generate_qp(c.l, c.n, c.M, c.m, c.seed);
  json j;
  j["prng"] = "std::mt19937_64";
  j["seed"] = qp.seed;
  j["l"] = qp.l();
  j["n"] = qp.n();
  j["alpha1"] = qp.alpha1;
  j["alpha2"] = qp.alpha2;
  j["M"] = qp.M;
  j["m"] = qp.m;
  j["A"] = matrix_json(qp.A);
  j["B"] = matrix_json(qp.B);
  j["D"] = vector_json(qp.D_diag);
  j["b"] = vector_json(qp.b);
  if (r.out) {
    write_output(r.out, j.dump() + "\n");
    std::printf("seed=%llu l=%d n=%d M=%.10g m=%.10g alpha1=%.10g alpha2=%.10g -> %s\n",
                static_cast<unsigned long long>(qp.seed), qp.l(), qp.n(), qp.M, qp.m, qp.alpha1,
                qp.alpha2, r.out->c_str());
  } else {
    std::cout << j.dump(1) << '\n';
  }
  return 0;
}

int cmd_solve(const Resolved& r, bool table) {
  const daipp::RunReport rep = daipp::run_experiment(r.config);
  std::cerr << "# prng=std::mt19937_64 seed=" << r.config.seed << '\n';
  if (!rep.message.empty()) std::cerr << "# " << rep.method << ": " << rep.message << '\n';
  write_output(r.out, daipp::emit_csv({rep}));
  if (table) std::cout << daipp::emit_table({rep});
  return rep.converged ? 0 : 2;
}

int cmd_bench(const Resolved& r, int seeds, const std::vector<std::string>& methods) {
  std::vector<daipp::RunReport> reports;
  for (int s = 0; s < seeds; ++s) {
    daipp::RunConfig c = r.config;
    c.seed = r.config.seed + static_cast<std::uint64_t>(s);
    const daipp::QpInstance qp = daipp::generate_qp(c.l, c.n, c.M, c.m, c.seed);
    for (const std::string& method : methods) {
      c.method = method;
      daipp::validate(c);
      reports.push_back(daipp::run_on_instance(qp, c));
      const daipp::RunReport& last = reports.back();
      std::cerr << "# seed " << c.seed << ' ' << method << ": inner " << last.inner_iters
                << (last.converged ? "" : " (not converged)") << '\n';
    }
  }
  std::cout << daipp::emit_table(reports);
  if (r.out) write_output(r.out, daipp::emit_csv(reports));
  return 0;
}

int cmd_check(const Resolved& r) {
  const daipp::RunConfig& c = r.config;
  const daipp::QpInstance qp = daipp::generate_qp(c.l, c.n, c.M, c.m, c.seed);
  const daipp::DaippExperiment ex = daipp::run_daipp_experiment(qp, c);
  if (!ex.result) {
    std::cerr << "D-AIPP did not finish: " << ex.report.message << '\n';
    return 2;
  }
  for (const std::string& w : ex.result->report.warnings) std::cerr << "warning: " << w << '\n';
  const auto reports = daipp::replay(qp.problem(), ex.params, *ex.result);
  std::ostringstream text;
  text << "# seed=" << c.seed << " outer=" << ex.report.outer_iters
       << " inner=" << ex.report.inner_iters << '\n'
       << daipp::format_reports(reports);
  write_output(r.out, text.str());
  return daipp::all_satisfied(reports) ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"D-AIPP solver and benchmark driver"};
  app.require_subcommand(1);

  Flags gen_flags, solve_flags, bench_flags, check_flags;
  CLI::App* gen = app.add_subcommand("generate", "generate a QP instance as JSON");
  add_run_flags(gen, gen_flags);

  CLI::App* solve = app.add_subcommand("solve", "solve one instance and print a CSV row");
  add_run_flags(solve, solve_flags);
  bool table = false;
  solve->add_flag("--table", table, "also print the aligned table");

  CLI::App* bench = app.add_subcommand("bench", "run several seeds and methods, print a table");
  add_run_flags(bench, bench_flags);
  int seeds = 1;
  std::vector<std::string> methods{"daipp", "prox_grad"};
  bench->add_option("--seeds", seeds, "number of consecutive seeds")->check(CLI::PositiveNumber);
  bench->add_option("--methods", methods, "methods to run")->delimiter(',');

  CLI::App* check = app.add_subcommand("check", "run D-AIPP and replay every bound");
  add_run_flags(check, check_flags);

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen->parsed()) return cmd_generate(resolve(gen_flags));
    if (solve->parsed()) return cmd_solve(resolve(solve_flags), table);
    if (bench->parsed()) return cmd_bench(resolve(bench_flags), seeds, methods);
    if (check->parsed()) return cmd_check(resolve(check_flags));
  } catch (const daipp::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}
