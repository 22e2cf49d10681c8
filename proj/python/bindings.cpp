#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "daipp/bench.hpp"
#include "daipp/diagnostics.hpp"
#include "daipp/errors.hpp"

namespace py = pybind11;
using namespace daipp;

namespace {

RunConfig make_config(const std::string& method, int l, int n, double M, double m, double rho,
                      std::uint64_t seed, std::optional<double> lambda,
                      std::optional<double> theta, std::optional<double> delta, int max_outer,
                      int max_inner, int max_iters) {
  RunConfig c;
  c.method = method;
  c.l = l;
  c.n = n;
  c.M = M;
  c.m = m;
  c.rho = rho;
  c.seed = seed;
  c.lambda = lambda;
  c.theta = theta;
  c.delta = delta;
  c.max_outer = max_outer;
  c.max_inner = max_inner;
  c.max_iters = max_iters;
  return c;
}

py::dict report_dict(const RunReport& r) {
  py::dict d;
  d["method"] = r.method;
  d["seed"] = r.seed;
  d["l"] = r.l;
  d["n"] = r.n;
  d["M"] = r.M;
  d["m"] = r.m;
  d["f_bar"] = r.f_bar;
  d["outer_iters"] = r.outer_iters;
  d["inner_iters"] = r.inner_iters;
  d["residual"] = r.residual;
  d["wall_ms"] = r.wall_ms;
  d["converged"] = r.converged;
  d["message"] = r.message;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, mod) {
  mod.doc() = "Doubly accelerated inexact proximal point solver";

  auto base = py::register_exception<Error>(mod, "Error");
  py::register_exception<DomainError>(mod, "DomainError", base.ptr());
  py::register_exception<ParameterError>(mod, "ParameterError", base.ptr());
  py::register_exception<SolverError>(mod, "SolverError", base.ptr());
  py::register_exception<NonconvergenceError>(mod, "NonconvergenceError", base.ptr());

  py::class_<QpInstance>(mod, "QpInstance")
      .def_readonly("A", &QpInstance::A)
      .def_readonly("B", &QpInstance::B)
      .def_readonly("D_diag", &QpInstance::D_diag)
      .def_readonly("b", &QpInstance::b)
      .def_readonly("alpha1", &QpInstance::alpha1)
      .def_readonly("alpha2", &QpInstance::alpha2)
      .def_readonly("m", &QpInstance::m)
      .def_readonly("M", &QpInstance::M)
      .def_readonly("seed", &QpInstance::seed)
      .def_readonly("hessian", &QpInstance::hessian)
      .def("objective", &QpInstance::objective_direct, py::arg("z"))
      .def("gradient",
           [](const QpInstance& qp, const Vector& z) { return qp.problem().smooth.grad(z); },
           py::arg("z"));

  mod.def("generate_qp", &generate_qp, py::arg("l"), py::arg("n"), py::arg("M"), py::arg("m"),
          py::arg("seed"));

  mod.def(
      "solve",
      [](const std::string& method, int l, int n, double M, double m, double rho,
         std::uint64_t seed, std::optional<double> lambda, std::optional<double> theta,
         std::optional<double> delta, int max_outer, int max_inner, int max_iters) {
        const RunConfig c = make_config(method, l, n, M, m, rho, seed, lambda, theta, delta,
                                        max_outer, max_inner, max_iters);
        RunReport r;
        {
          py::gil_scoped_release release;
          r = run_experiment(c);
        }
        return report_dict(r);
      },
      py::arg("method") = "daipp", py::arg("l") = 20, py::arg("n") = 300,
      py::arg("M") = 16777216.0, py::arg("m") = 1048576.0, py::arg("rho") = 1e-7,
      py::arg("seed") = 1, py::arg("lambda_") = py::none(), py::arg("theta") = py::none(),
      py::arg("delta") = py::none(), py::arg("max_outer") = 100000,
      py::arg("max_inner") = 1000000, py::arg("max_iters") = 10000000);

  mod.def(
      "check",
      [](int l, int n, double M, double m, double rho, std::uint64_t seed) {
        RunConfig c;
        c.l = l;
        c.n = n;
        c.M = M;
        c.m = m;
        c.rho = rho;
        c.seed = seed;
        const QpInstance qp = generate_qp(l, n, M, m, seed);
        const DaippExperiment ex = run_daipp_experiment(qp, c);
        if (!ex.result) throw NonconvergenceError(ex.report.message);
        py::list out;
        for (const BoundReport& r : replay(qp.problem(), ex.params, *ex.result)) {
          py::dict d;
          d["id"] = r.theorem_id;
          d["bound"] = r.bound_value;
          d["observed"] = r.observed_value;
          d["margin"] = r.margin;
          d["satisfied"] = r.satisfied;
          out.append(d);
        }
        return out;
      },
      py::arg("l") = 10, py::arg("n") = 60, py::arg("M") = 1e4, py::arg("m") = 1e2,
      py::arg("rho") = 1e-5, py::arg("seed") = 1);

  mod.def(
      "map_tolerances",
      [](double rho_hat, double m, double M) {
        const Tolerances t = map_tolerances(rho_hat, m, M);
        return py::make_tuple(t.lambda, t.rho_bar, t.eps_bar);
      },
      py::arg("rho_hat"), py::arg("m"), py::arg("M"));

  mod.def(
      "outer_coefficients",
      [](double A) {
        const OuterCoefficients c = outer_coefficients(A);
        return py::make_tuple(c.a, c.A_next);
      },
      py::arg("A"));

  mod.def("project_simplex", &project_simplex, py::arg("p"));

  mod.def(
      "to_csv",
      [](const std::vector<py::dict>& rows) {
        std::vector<RunReport> reports;
        for (const py::dict& d : rows) {
          RunReport r;
          r.method = d["method"].cast<std::string>();
          r.seed = d["seed"].cast<std::uint64_t>();
          r.l = d["l"].cast<int>();
          r.n = d["n"].cast<int>();
          r.M = d["M"].cast<double>();
          r.m = d["m"].cast<double>();
          r.f_bar = d["f_bar"].cast<double>();
          r.outer_iters = d["outer_iters"].cast<long long>();
          r.inner_iters = d["inner_iters"].cast<long long>();
          r.residual = d["residual"].cast<double>();
          r.wall_ms = d["wall_ms"].cast<double>();
          reports.push_back(std::move(r));
        }
        return emit_csv(reports);
      },
      py::arg("reports"));
}
