#include <doctest.h>

#include <cmath>

#include "daipp/acg.hpp"
#include "oracles.hpp"

using namespace daipp;

namespace {

// psi_s(z) = z^2/2 in 1-D, psi_n = 0.
AcgProblem one_d_problem() {
  AcgProblem p;
  p.psi_s = quadratic_oracle(Matrix::Identity(1, 1), Vector::Zero(1), 0.0, 0.0, 1.0);
  p.psi_n_eval = [](const Vector&) { return 0.0; };
  p.psi_n_prox = [](double, const Vector& q) { return q; };
  p.lipschitz = 1.0;
  p.mu = 0.0;
  return p;
}

Vector scalar(double v) { return Vector::Constant(1, v); }

}  // namespace

TEST_SUITE("acg_solver") {
  TEST_CASE("B recurrence") {
    CHECK(acg_next_B(0.0, 0.0, 1.0) == doctest::Approx(1.0));
    const double b2 = acg_next_B(1.0, 0.5, 1.0);
    CHECK(b2 == doctest::Approx(1.0 + (1.5 + std::sqrt(8.25)) / 2.0).epsilon(1e-14));
    CHECK(b2 == doctest::Approx(3.186141).epsilon(1e-6));
  }

  TEST_CASE("b_lower_bound values") {
    CHECK(b_lower_bound(2, 0.0, 1.0) == doctest::Approx(1.0));
    CHECK(b_lower_bound(1, 0.7, 3.0) == doctest::Approx(1.0 / 3.0));
    double B = 0.0;
    for (int j = 1; j <= 10; ++j) B = acg_next_B(B, 0.5, 1.5);
    CHECK(B >= b_lower_bound(10, 0.5, 1.5));
  }

  TEST_CASE("min_inner_iterations") {
    CHECK(min_inner_iterations(1.0, 0.5, 0.25, 0.0) == 7);
    int prev = min_inner_iterations(5.0, 0.5, 0.25, 0.0);
    for (double d : {0.1, 1.0, 10.0, 100.0}) {
      const int cur = min_inner_iterations(5.0, 0.5, 0.25, d);
      CHECK(cur <= prev);
      prev = cur;
    }
  }

  TEST_CASE("acg_init") {
    const AcgProblem p = one_d_problem();
    const AcgState s = acg_init(p, scalar(1.0));
    CHECK(s.j == 0);
    CHECK(s.B == 0.0);
    CHECK(s.z[0] == 1.0);
    CHECK(s.y[0] == 1.0);
    CHECK(s.y0[0] == 1.0);
    CHECK(s.Gamma(scalar(5.0)) == 0.0);

    Sampler rng(1);
    const oracle::ConvexInstance inst = oracle::make_convex_instance(4, 0.5, rng);
    Vector out(4);
    out << 2.0, -1.0, 0.3, 0.1;
    const AcgState t = acg_init(inst.problem, out);
    // with mu > 0 the weight-1e12 prox is the projection up to O(1e-12)
    CHECK((t.y0 - oracle::simplex_projection_bruteforce(out)).norm() < 1e-9);
    const Vector inside = rng.simplex_point(4);
    CHECK((acg_init(inst.problem, inside).y0 - inside).norm() == 0.0);
  }

  TEST_CASE("one step on the 1-D quadratic") {
    const AcgProblem p = one_d_problem();
    const AcgState s1 = acg_step(p, acg_init(p, scalar(1.0)));
    CHECK(s1.B == doctest::Approx(1.0));
    CHECK(s1.y[0] == doctest::Approx(0.0));
    CHECK(s1.z[0] == doctest::Approx(0.0));
    CHECK(s1.u[0] == doctest::Approx(1.0));
    // Gamma_1 is the linearization at z0 = 1: Gamma_1(0) = 1/2 - 1 = -1/2,
    // so eta_1 = psi(0) - Gamma_1(0) - 0 = 1/2.
    CHECK(s1.eta == doctest::Approx(0.5));
    // |1*1 + 0 - 1|^2 + 2*1*0.5 = 1 <= |0 - 1|^2 = 1
    CHECK(hpe_check(s1, scalar(1.0)));
    AcgState bad = s1;
    bad.eta *= 1.01;
    CHECK_FALSE(hpe_check(bad, scalar(1.0)));
  }

  TEST_CASE("acg_run contract") {
    const AcgProblem p = one_d_problem();
    const AcgCertificate c = acg_run(p, scalar(1.0), [](const AcgState&) { return true; }, 3, 10);
    CHECK(c.iterations == 3);
    CHECK_THROWS_AS((void)acg_run(p, scalar(1.0), [](const AcgState&) { return false; }, 1, 1),
                    AcgNonconvergence);
    CHECK_THROWS_AS((void)acg_run(p, scalar(1.0), [](const AcgState&) { return true; }, 0, 5),
                    ParameterError);
    try {
      (void)acg_run(p, scalar(1.0), [](const AcgState&) { return false; }, 1, 4);
    } catch (const AcgNonconvergence& e) {
      CHECK(e.state.j == 4);
    }
  }

  TEST_CASE("acg_continue resumes the same trajectory") {
    Sampler rng(2);
    const oracle::ConvexInstance inst = oracle::make_convex_instance(6, 0.5, rng);
    const Vector z0 = rng.simplex_point(6);
    AcgState a = acg_init(inst.problem, z0);
    const auto never = [](const AcgState&) { return false; };
    const auto always = [](const AcgState&) { return true; };
    CHECK(acg_continue(inst.problem, a, always, 5, 100) == 5);
    CHECK(acg_continue(inst.problem, a, always, 12, 100) == 7);
    AcgState b = acg_init(inst.problem, z0);
    for (int j = 0; j < 12; ++j) b = acg_step(inst.problem, b);
    CHECK((a.z - b.z).norm() == 0.0);
    CHECK(a.eta == b.eta);
    CHECK_THROWS_AS(acg_continue(inst.problem, a, never, 0, 15), AcgNonconvergence);
  }

  TEST_CASE("certificate properties on random instances") {
    Sampler rng(5);
    for (int t = 0; t < 5; ++t) {
      const int n = 3 + static_cast<int>(rng.uniform_int(0, 10));
      const double mu = t % 2 == 0 ? 0.0 : 0.5;
      const oracle::ConvexInstance inst = oracle::make_convex_instance(n, mu, rng);
      const AcgProblem& p = inst.problem;
      const Vector z0 = rng.simplex_point(n);
      AcgState s = acg_init(p, z0);
      std::vector<Vector> xs;
      for (int i = 0; i < 30; ++i) xs.push_back(rng.simplex_point(n));
      for (int j = 1; j <= 60; ++j) {
        s = acg_step(p, s);
        CHECK(hpe_check(s, z0));
        CHECK(s.B >= b_lower_bound(j, mu, inst.L) * (1 - 1e-12));
        CHECK(s.eta >= 0.0);
        const double psi_z = acg_objective(p, s.z);
        for (const Vector& x : xs) {
          CHECK(s.Gamma(x) <= p.psi_s.eval(x) + 1e-10);
          CHECK(acg_objective(p, x) - (psi_z + s.u.dot(x - s.z) - s.eta) >= -1e-8);
        }
      }
    }
  }

  TEST_CASE("negative certificate gap is reported") {
    // psi_s = -z^2/2 is not convex, so its linearizations lie above it
    AcgProblem p = one_d_problem();
    p.psi_s = quadratic_oracle(-Matrix::Identity(1, 1), Vector::Zero(1), 0.0, 0.0, 1.0);
    AcgState s = acg_init(p, scalar(1.0));
    bool threw = false;
    try {
      for (int j = 0; j < 10; ++j) s = acg_step(p, s);
    } catch (const SolverError&) {
      threw = true;
    }
    CHECK(threw);
  }
}
