#include <doctest.h>

#include <cmath>

#include "daipp/bench.hpp"
#include "daipp/diagnostics.hpp"
#include "oracles.hpp"

using namespace daipp;

namespace {

RunConfig small_config() {
  RunConfig cfg;
  cfg.l = 5;
  cfg.n = 15;
  cfg.M = 1000.0;
  cfg.m = 50.0;
  cfg.rho = 1e-4;
  cfg.seed = 3;
  return cfg;
}

// f(z) >= f(c) + <g, z - c> - (m/2)|z - c|^2 and |z - c|^2 <= 1 - 1/n on the simplex
double curvature_lower_bound(const QpInstance& qp) {
  const CompositeProblem prob = qp.problem();
  const Vector c = simplex_centroid(qp.n());
  const Vector g = prob.smooth.grad(c);
  return prob.smooth.eval(c) + g.minCoeff() - g.dot(c) - 0.5 * qp.m * (1.0 - 1.0 / qp.n());
}

}  // namespace

TEST_SUITE("bench_cli") {
  TEST_CASE("generate_qp is deterministic") {
    const QpInstance a = generate_qp(4, 10, 500.0, 20.0, 77);
    const QpInstance b = generate_qp(4, 10, 500.0, 20.0, 77);
    CHECK(a.A == b.A);
    CHECK(a.B == b.B);
    CHECK(a.b == b.b);
    CHECK(a.D_diag == b.D_diag);
    CHECK(a.alpha1 == b.alpha1);
    CHECK(a.alpha2 == b.alpha2);
    const QpInstance c = generate_qp(4, 10, 500.0, 20.0, 78);
    CHECK_FALSE(a.A == c.A);
  }

  TEST_CASE("generated curvature pair matches a Jacobi eigensolve") {
    for (std::uint64_t seed : {1u, 2u, 3u}) {
      const QpInstance qp = generate_qp(6, 14, 1e4, 1e2, seed);
      const auto ev = oracle::jacobi_eigenvalues(qp.hessian);
      CHECK(std::abs(qp.M - ev.back()) <= 1e-6 * ev.back());
      CHECK(std::abs(qp.m + ev.front()) <= 1e-6 * std::abs(ev.front()));
      CHECK(qp.M == doctest::Approx(1e4).epsilon(1e-4));
      CHECK(qp.m == doctest::Approx(1e2).epsilon(1e-4));
      for (int i = 0; i < qp.n(); ++i) {
        CHECK(qp.D_diag[i] >= 1.0);
        CHECK(qp.D_diag[i] <= 1000.0);
        CHECK(qp.D_diag[i] == std::round(qp.D_diag[i]));
      }
    }
  }

  TEST_CASE("alpha1 = 0 has no negative curvature") {
    const QpInstance g = generate_qp(3, 6, 100.0, 10.0, 4);
    CHECK_THROWS_AS((void)make_qp_instance(g.A, g.B, g.D_diag, g.b, 0.0, 1.0), ParameterError);
  }

  TEST_CASE("baseline on a 1-D quadratic") {
    // f = z^2/2 with M declared as 2: z_t = 2^-t, v_t = 2^-(t+1), scale 2
    CompositeProblem prob;
    prob.smooth = quadratic_oracle(Matrix::Identity(1, 1), Vector::Zero(1), 0.0, 0.0, 2.0);
    prob.nonsmooth = zero_function(1);
    prob.dimension = 1;
    const BaselineResult r = prox_grad_baseline(prob, Vector::Constant(1, 1.0), 1e-3, 100);
    CHECK(r.converged);
    CHECK(r.iterations == 8);
    CHECK(r.residual == doctest::Approx(std::pow(2.0, -10)));
    const BaselineResult capped = prox_grad_baseline(prob, Vector::Constant(1, 1.0), 1e-3, 3);
    CHECK_FALSE(capped.converged);

    CompositeProblem flat = prob;
    flat.smooth = quadratic_oracle(Matrix::Identity(1, 1), -Vector::Ones(1), 0.0, 0.0, 2.0);
    CHECK(prox_grad_baseline(flat, Vector::Ones(1), 1e-12, 10).iterations == 0);
  }

  TEST_CASE("small instance: both methods converge and the pair is sane") {
    RunConfig cfg = small_config();
    const QpInstance qp = generate_qp(cfg.l, cfg.n, cfg.M, cfg.m, cfg.seed);
    const DaippExperiment ex = run_daipp_experiment(qp, cfg);
    REQUIRE(ex.result);
    CHECK(ex.report.converged);
    CHECK(ex.report.residual <= cfg.rho);
    const CompositeProblem prob = qp.problem();
    CHECK(ex.report.f_bar == doctest::Approx(composite_value(prob, ex.pair.z_hat)).epsilon(1e-10));
    CHECK(std::isfinite(ex.report.f_bar));
    const Vector w = ex.pair.v_hat - prob.smooth.grad(ex.pair.z_hat);
    CHECK(w.maxCoeff() <= w.dot(ex.pair.z_hat) + 1e-9);

    CHECK(ex.report.f_bar >= curvature_lower_bound(qp));
    double sample_min = kInfinity;
    for (const Vector& u : simplex_samples(cfg.n, 100000, 5)) {
      sample_min = std::min(sample_min, prob.smooth.eval(u));
    }
    MESSAGE("f_bar = " << ex.report.f_bar << ", min over 1e5 samples = " << sample_min);
    CHECK(sample_min >= curvature_lower_bound(qp));

    cfg.method = "prox_grad";
    const RunReport pg = run_on_instance(qp, cfg);
    CHECK(pg.converged);
    CHECK(pg.residual <= cfg.rho);
  }

  TEST_CASE("loose target converges quickly") {
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
      RunConfig cfg = small_config();
      cfg.rho = 1.0;
      cfg.seed = seed;
      const RunReport r = run_experiment(cfg);
      CHECK(r.converged);
      CHECK(r.residual <= 1.0);
      CHECK(r.outer_iters <= 10);
    }
  }

  // The "at most 2 outer iterations on any instance" claim does not hold:
  // seed 3 of this shape needs 5 (seed 5 needs 6). Kept as an expected failure.
  TEST_CASE("loose target within 2 outer iterations on every instance" * doctest::should_fail()) {
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
      RunConfig cfg = small_config();
      cfg.rho = 1.0;
      cfg.seed = seed;
      CHECK(run_experiment(cfg).outer_iters <= 2);
    }
  }

  TEST_CASE("config validation") {
    RunConfig cfg = small_config();
    cfg.method = "ag";
    CHECK_THROWS_AS(validate(cfg), ParameterError);
    cfg = small_config();
    cfg.n = 0;
    CHECK_THROWS_AS(validate(cfg), ParameterError);
  }

  TEST_CASE("CSV round trip and table layout") {
    RunReport a;
    a.method = "daipp";
    a.seed = 9;
    a.l = 20;
    a.n = 300;
    a.M = 16777216.0;
    a.m = 1048576.0;
    a.f_bar = -1.234567890123456789e5;
    a.outer_iters = 271;
    a.inner_iters = 8943;
    a.residual = 9.87654321e-8;
    a.wall_ms = 1432.25;
    a.converged = true;
    RunReport b = a;
    b.method = "prox_grad";
    b.outer_iters = b.inner_iters = 3848;
    b.residual = 1.0 / 3.0;

    const std::string csv = emit_csv({a, b});
    CHECK(csv.rfind(kCsvHeader, 0) == 0);
    const auto back = parse_csv(csv);
    REQUIRE(back.size() == 2);
    CHECK(back[0].method == "daipp");
    CHECK(back[0].seed == a.seed);
    CHECK(back[0].f_bar == a.f_bar);
    CHECK(back[0].M == a.M);
    CHECK(back[0].inner_iters == a.inner_iters);
    CHECK(back[0].wall_ms == a.wall_ms);
    CHECK(back[1].residual == b.residual);
    CHECK(emit_csv({a, b}) == csv);

    const std::string one = emit_table({a});
    CHECK(std::count(one.begin(), one.end(), '\n') == 3);  // header, rule, row
    const std::string two = emit_table({a, b});
    CHECK(std::count(two.begin(), two.end(), '\n') == 3);
    CHECK(two.find("daipp") != std::string::npos);
    CHECK(two.find("prox_grad") != std::string::npos);
    CHECK(two.find("8943") != std::string::npos);
    CHECK(two.find("3848") != std::string::npos);
    CHECK_THROWS_AS((void)parse_csv("1,2,3\n"), DomainError);
  }
}
