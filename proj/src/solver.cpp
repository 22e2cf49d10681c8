#include "daipp/solver.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace daipp {

void validate(const DaippParams& params, double m) {
  if (!(m > 0.0)) throw ParameterError("lower curvature m must be positive");
  const double lambda = params.lambda;
  if (!(lambda > 0.0)) throw ParameterError("lambda must be positive");
  if (params.mode == LambdaMode::kStrict) {
    if (lambda * m > 0.5 * (1.0 + 1e-12)) {
      throw ParameterError("lambda must satisfy lambda <= 1/(2m) in strict mode");
    }
  } else if (!(lambda * m < 1.0)) {
    throw ParameterError("lambda must satisfy lambda < 1/m");
  }
  const double xi = params.xi(m);
  if (!(params.theta > 0.0 && params.theta < 0.5 * xi)) {
    throw ParameterError("theta must satisfy 0 < theta < (1 - lambda m)/2");
  }
  if (!(params.delta >= 0.0) || !std::isfinite(params.delta)) {
    throw ParameterError("delta must be a finite nonnegative number");
  }
  if (!(params.rho_bar > 0.0) || !(params.eps_bar > 0.0)) {
    throw ParameterError("rho_bar and eps_bar must be positive");
  }
  if (params.max_outer < 1 || params.max_inner < 1) {
    throw ParameterError("iteration caps must be positive");
  }
}

namespace {

DaippParams params_with_lambda(double lambda, double m, double M, double rho_bar, double eps_bar,
                               LambdaMode mode) {
  DaippParams p;
  p.lambda = lambda;
  p.mode = mode;
  p.theta = 0.49 * p.xi(m);
  p.delta = std::max(0.0, 0.9 * std::pow(M / m, 1.0 / 7.0) - p.theta);
  p.rho_bar = rho_bar;
  p.eps_bar = eps_bar;
  return p;
}

}  // namespace

DaippParams default_params(double m, double M, double rho_bar, double eps_bar) {
  return params_with_lambda(0.5 / m, m, M, rho_bar, eps_bar, LambdaMode::kStrict);
}

DaippParams experiment_params(double m, double M, double rho_bar, double eps_bar) {
  return params_with_lambda(0.9 / m, m, M, rho_bar, eps_bar, LambdaMode::kLoose);
}

Tolerances map_tolerances(double rho_hat, double m, double M) {
  if (!(rho_hat > 0.0 && m > 0.0 && M > 0.0)) {
    throw ParameterError("map_tolerances: inputs must be positive");
  }
  return Tolerances{1.0 / (2.0 * m), rho_hat / 4.0, rho_hat * rho_hat / (32.0 * (M + 2.0 * m))};
}

double delta_window_upper(double lambda, double rho_bar, double D) {
  const double t = lambda * rho_bar / D;
  return 10.0 * (std::sqrt(t) + std::sqrt(1.0 / t));
}

OuterCoefficients outer_coefficients(double A) {
  if (!(A >= 0.0)) throw ParameterError("outer_coefficients: A must be nonnegative");
  const double a = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * A));
  return OuterCoefficients{a, A + a};
}

Vector compute_x_tilde(double A, double a, const Vector& y, const Vector& x) {
  const double total = A + a;
  return (A / total) * y + (a / total) * x;
}

AcgProblem build_inner_problem(const CompositeProblem& prob, const DaippParams& params,
                               const Vector& x_tilde) {
  const double lambda = params.lambda;
  const double m = prob.smooth.curvature_lower;
  const double M = prob.smooth.curvature_upper;
  if (!(lambda * m < 1.0)) throw ParameterError("build_inner_problem: need lambda m < 1");

  const double w = std::max(0.25, 0.5 * lambda * m);  // weight of |. - x_tilde|^2 in psi_s
  const double c = 0.5 - w;                           // weight left in psi_n

  AcgProblem inner;
  inner.lipschitz = lambda * M + 2.0 * w;
  inner.mu = 2.0 * c;

  const SmoothOracle f = prob.smooth;
  inner.psi_s.eval = [f, lambda, w, x_tilde](const Vector& u) {
    return lambda * f.eval(u) + w * (u - x_tilde).squaredNorm();
  };
  inner.psi_s.grad = [f, lambda, w, x_tilde](const Vector& u) -> Vector {
    Vector g = lambda * f.grad(u);
    g += (2.0 * w) * (u - x_tilde);
    return g;
  };
  inner.psi_s.curvature_lower = 0.0;
  inner.psi_s.curvature_upper = inner.lipschitz;

  const ProxOracle h = prob.nonsmooth;
  inner.psi_n_eval = [h, lambda, c, x_tilde](const Vector& u) {
    const double hu = h.eval(u);
    if (!(hu < kInfinity)) return kInfinity;
    return lambda * hu + c * (u - x_tilde).squaredNorm();
  };
  // min lambda h(u) + c|u - xt|^2 + (a/2)|u - p|^2
  //   = min lambda h(u) + ((2c + a)/2) |u - (2c xt + a p)/(2c + a)|^2 + const.
  inner.psi_n_prox = [h, lambda, c, x_tilde](double a, const Vector& p) -> Vector {
    const double weight = 2.0 * c + a;
    const Vector center = (2.0 * c * x_tilde + a * p) / weight;
    return h.prox(lambda / weight, center);
  };

  if (prob.omega_projection) {
    inner.omega_projection = prob.omega_projection;
  } else {
    inner.omega_projection = [](const Vector& v) { return v; };
  }
  return inner;
}

bool stop_inner_test(double xi, double delta, const InnerTriple& triple, const Vector& x_tilde) {
  const Vector d = triple.z - x_tilde;
  const double lhs = (triple.u + delta * d).squaredNorm() / (0.5 * xi + delta) + 2.0 * triple.eta;
  const double rhs = (0.25 * xi + delta) * d.squaredNorm();
  return lhs <= rhs;
}

Vector outer_x_update(double xi, double theta, double delta, double a, const Vector& v_tilde,
                      const Vector& y_next, const Vector& x, const Vector& y) {
  const double denom = 0.5 * xi - theta + (theta + delta) / a;
  if (!(denom > 0.0)) throw ParameterError("outer_x_update: nonpositive denominator");
  const Vector numer =
      -v_tilde + (0.5 * xi) * y_next + (delta / a) * x - ((1.0 - 1.0 / a) * theta) * y;
  return numer / denom;
}

bool stop_outer_test(double lambda, double rho_bar, const Vector& z, const Vector& x_tilde) {
  return (z - x_tilde).norm() <= 0.5 * lambda * rho_bar;
}

int inner_iteration_floor(double lambda, double M) {
  return static_cast<int>(std::ceil(6.0 * std::sqrt(2.0 * lambda * M + 1.0)));
}

FinalRefinement final_refine(const AcgProblem& inner, const DaippParams& params, double xi,
                             const Vector& x_tilde, AcgState& state) {
  const double eta_cap = params.lambda * params.eps_bar;
  const AcgStop stop = [&](const AcgState& s) {
    return s.eta <= eta_cap && stop_inner_test(xi, params.delta, {s.z, s.u, s.eta}, x_tilde);
  };
  FinalRefinement out;
  out.extra_iterations = acg_continue(inner, state, stop, state.j, params.max_inner);
  out.triple = InnerTriple{state.z, state.u, state.eta};
  return out;
}

DaippResult daipp_run(const CompositeProblem& prob, const DaippParams& params, const Vector& x0) {
  const double m = prob.smooth.curvature_lower;
  const double M = prob.smooth.curvature_upper;
  validate(params, m);
  if (!(M >= m)) throw ParameterError("daipp_run: need M >= m");
  check_point(x0, prob.dimension, "daipp_run");
  if (!(prob.nonsmooth.eval(x0) < kInfinity)) {
    throw DomainError("daipp_run: x0 must lie in dom h");
  }

  const double lambda = params.lambda;
  const double xi = params.xi(m);
  const double theta = params.theta;
  const double delta = params.delta;

  DaippResult result;
  DaippReport& report = result.report;
  report.inner_floor = inner_iteration_floor(lambda, M);
  if (delta > delta_window_upper(lambda, params.rho_bar, prob.diameter)) {
    std::ostringstream msg;
    msg << "delta = " << delta << " exceeds the complexity window "
        << delta_window_upper(lambda, params.rho_bar, prob.diameter);
    report.warnings.push_back(msg.str());
  }

  double A = 0.0;
  Vector x = x0;
  Vector y = x0;
  for (int k = 0; k < params.max_outer; ++k) {
    const OuterCoefficients coeff = outer_coefficients(A);
    const Vector x_tilde = compute_x_tilde(A, coeff.a, y, x);
    const AcgProblem inner = build_inner_problem(prob, params, x_tilde);

    AcgState state = acg_init(inner, x_tilde);
    const AcgStop inner_stop = [&](const AcgState& s) {
      return stop_inner_test(xi, delta, {s.z, s.u, s.eta}, x_tilde);
    };
    try {
      acg_continue(inner, state, inner_stop, report.inner_floor, params.max_inner);
    } catch (const AcgNonconvergence& e) {
      report.total_inner_iterations += e.state.j;
      throw DaippNonconvergence(std::string("D-AIPP inner solve at outer iteration ") +
                                    std::to_string(k) + ": " + e.what(),
                                report);
    }
    report.total_inner_iterations += state.j;

    OuterRecord rec;
    rec.k = k;
    rec.A = A;
    rec.a = coeff.a;
    rec.inner_iterations = state.j;
    rec.residual = (state.z - x_tilde).norm() / lambda;
    rec.eps_tilde = 2.0 * state.eta;
    if (params.record_trajectory) {
      rec.x = x;
      rec.y = y;
      rec.x_tilde = x_tilde;
    }

    if (stop_outer_test(lambda, params.rho_bar, state.z, x_tilde)) {
      FinalRefinement fin;
      try {
        fin = final_refine(inner, params, xi, x_tilde, state);
      } catch (const AcgNonconvergence& e) {
        report.total_inner_iterations += e.state.j - rec.inner_iterations;
        rec.phi = composite_value(prob, state.z);
        report.outer.push_back(std::move(rec));
        throw DaippNonconvergence(std::string("D-AIPP final refinement: ") + e.what(), report);
      }
      report.final_extra_iterations = fin.extra_iterations;
      report.total_inner_iterations += fin.extra_iterations;
      rec.inner_iterations += fin.extra_iterations;
      rec.eps_tilde = 2.0 * fin.triple.eta;
      rec.phi = composite_value(prob, fin.triple.z);
      report.final_residual = (fin.triple.z - x_tilde).norm() / lambda;
      // Step-2 residual stays in rec.residual; the refined one is final_residual.
      if (params.record_trajectory) {
        rec.y_next = fin.triple.z;
        rec.v_tilde = fin.triple.u;
      }
      report.outer.push_back(std::move(rec));

      result.solution.lambda = lambda;
      result.solution.z_minus = x_tilde;
      result.solution.z = fin.triple.z;
      result.solution.w = fin.triple.u / lambda;
      result.solution.eps = fin.triple.eta / lambda;
      return result;
    }

    rec.phi = composite_value(prob, state.z);
    if (params.record_trajectory) {
      rec.y_next = state.z;
      rec.v_tilde = state.u;
    }
    report.outer.push_back(std::move(rec));

    // (y_{k+1}, v_{k+1}, eps_{k+1}) = (z, u, 2 eta).
    Vector x_next = outer_x_update(xi, theta, delta, coeff.a, state.u, state.z, x, y);
    y = std::move(state.z);
    x = std::move(x_next);
    A = coeff.A_next;
  }
  throw DaippNonconvergence("D-AIPP: outer iteration cap " + std::to_string(params.max_outer) +
                                " reached",
                            report);
}

}  // namespace daipp
