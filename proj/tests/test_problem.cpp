#include <doctest.h>

#include <cmath>

#include "daipp/problem.hpp"
#include "daipp/qp.hpp"
#include "oracles.hpp"

using namespace daipp;

namespace {

Vector vec(std::initializer_list<double> v) {
  Vector x(static_cast<Eigen::Index>(v.size()));
  int i = 0;
  for (double d : v) x[i++] = d;
  return x;
}

}  // namespace

TEST_SUITE("problem_core") {
  TEST_CASE("linearize of a 1-D quadratic") {
    const SmoothOracle f = quadratic_oracle(Matrix::Identity(1, 1), Vector::Zero(1), 0.0, 0.0, 1.0);
    const AffineModel lin = linearize(f, vec({1.0}));
    CHECK(lin.slope[0] == doctest::Approx(1.0));
    CHECK(lin.intercept == doctest::Approx(-0.5));
    CHECK(lin(vec({3.0})) == doctest::Approx(2.5));
  }

  TEST_CASE("linearize at a stationary point is constant") {
    const SmoothOracle f = quadratic_oracle(2.0 * Matrix::Identity(2, 2), Vector::Zero(2), 4.0, 0.0, 2.0);
    const AffineModel lin = linearize(f, Vector::Zero(2));
    CHECK(lin.slope.norm() == 0.0);
    CHECK(lin(vec({5.0, -7.0})) == doctest::Approx(4.0));
  }

  TEST_CASE("centered and origin-free models agree") {
    Sampler rng(3);
    Matrix H(3, 3);
    H << 2, 1, 0, 1, 3, -1, 0, -1, 1;
    const SmoothOracle f = quadratic_oracle(H, vec({1, -2, 0.5}), 0.3, 1.0, 4.0);
    const Vector x = rng.simplex_point(3);
    const Vector o = rng.simplex_point(3);
    const AffineModel a = linearize(f, x);
    const AffineModel b = linearize(f, x, o);
    for (int t = 0; t < 10; ++t) {
      const Vector u = rng.simplex_point(3) * 3.0;
      CHECK(a(u) == doctest::Approx(b(u)).epsilon(1e-12));
    }
    CHECK(b.constant_term() == doctest::Approx(a.intercept).epsilon(1e-12));
    CHECK(b.recentered(Vector::Zero(3))(o) == doctest::Approx(b(o)).epsilon(1e-12));
  }

  TEST_CASE("linearization on the QP instance matches eval at the base point") {
    const QpInstance qp = generate_qp(5, 12, 100.0, 10.0, 4);
    const CompositeProblem prob = qp.problem();
    const Vector c = simplex_centroid(12);
    const AffineModel lin = linearize(prob.smooth, c);
    CHECK(lin(c) == doctest::Approx(prob.smooth.eval(c)).epsilon(1e-12));
    CHECK(prob.smooth.eval(c) == doctest::Approx(qp.objective_direct(c)).epsilon(1e-10));
  }

  TEST_CASE("upper curvature bound on linearization error") {
    const QpInstance qp = generate_qp(5, 12, 100.0, 10.0, 5);
    const CompositeProblem prob = qp.problem();
    Sampler rng(11);
    for (int t = 0; t < 200; ++t) {
      const Vector x = rng.simplex_point(12);
      const Vector u = rng.simplex_point(12);
      const double gap = prob.smooth.eval(u) - linearize(prob.smooth, x)(u);
      CHECK(std::abs(gap) <= 0.5 * qp.M * (u - x).squaredNorm() * (1 + 1e-9) + 1e-12);
      CHECK(gap >= -0.5 * qp.m * (u - x).squaredNorm() * (1 + 1e-9) - 1e-12);
      const double lip = (prob.smooth.grad(u) - prob.smooth.grad(x)).norm();
      CHECK(lip <= qp.M * (u - x).norm() * (1 + 1e-9));
    }
  }

  TEST_CASE("project_simplex fixed examples") {
    CHECK((project_simplex(vec({2, 0, 0})) - vec({1, 0, 0})).norm() < 1e-15);
    CHECK((project_simplex(vec({0.5, 0.5, 0.5})) - Vector::Constant(3, 1.0 / 3)).norm() < 1e-15);
    const Vector inside = vec({0.2, 0.3, 0.5});
    CHECK((project_simplex(inside) - inside).norm() < 1e-15);
  }

  TEST_CASE("project_simplex matches support enumeration") {
    const Vector p = vec({0.9, 0.2, -0.3});
    CHECK((project_simplex(p) - oracle::simplex_projection_bruteforce(p)).norm() < 1e-12);
    Sampler rng(17);
    for (int t = 0; t < 300; ++t) {
      const int n = 1 + static_cast<int>(rng.uniform_int(0, 7));
      Vector q(n);
      for (int i = 0; i < n; ++i) q[i] = 2.0 * rng.normal();
      const Vector x = project_simplex(q);
      CHECK(in_simplex(x));
      CHECK((x - oracle::simplex_projection_bruteforce(q)).norm() < 1e-12);
      CHECK((project_simplex(x) - x).norm() < 1e-12);
    }
  }

  TEST_CASE("project_simplex rejects non-finite input") {
    CHECK_THROWS_AS((void)project_simplex(vec({1.0, NAN})), DomainError);
    CHECK_THROWS_AS((void)project_simplex(vec({INFINITY, 0.0})), DomainError);
  }

  TEST_CASE("simplex prox ignores t and is nonexpansive") {
    const ProxOracle h = simplex_indicator(5);
    Sampler rng(23);
    for (int t = 0; t < 100; ++t) {
      Vector p(5), q(5);
      for (int i = 0; i < 5; ++i) {
        p[i] = rng.normal();
        q[i] = rng.normal();
      }
      const Vector a = h.prox(1e-6, p);
      const Vector b = h.prox(1e6, p);
      CHECK((a - b).norm() == 0.0);
      CHECK(h.eval(a) == 0.0);
      CHECK((h.prox(1.0, p) - h.prox(1.0, q)).norm() <= (p - q).norm() + 1e-14);
    }
    CHECK(h.eval(vec({0.5, 0.5, 0.5, 0, 0})) == kInfinity);
  }

  TEST_CASE("estimate_curvature on small maps") {
    const Matrix D = vec({3.0, -2.0}).asDiagonal();
    const CurvatureEstimate e = estimate_curvature([&](const Vector& v) { return Vector(D * v); }, 2, 1e-10);
    CHECK(e.m == doctest::Approx(2.0).epsilon(1e-10));
    CHECK(e.M == doctest::Approx(3.0).epsilon(1e-10));
    const CurvatureEstimate id = estimate_curvature([](const Vector& v) { return v; }, 4, 1e-10);
    CHECK(id.m == doctest::Approx(-1.0).epsilon(1e-10));
    CHECK(id.M == doctest::Approx(1.0).epsilon(1e-10));
  }

  TEST_CASE("estimate_curvature matches Jacobi on random symmetric matrices") {
    Sampler rng(29);
    for (int t = 0; t < 5; ++t) {
      Matrix G(20, 20);
      for (int i = 0; i < 20; ++i)
        for (int j = 0; j < 20; ++j) G(i, j) = rng.normal();
      const Matrix S = 0.5 * (G + G.transpose());
      const auto ev = oracle::jacobi_eigenvalues(S);
      const CurvatureEstimate e = estimate_curvature([&](const Vector& v) { return Vector(S * v); }, 20, 1e-12);
      CHECK(std::abs(e.M - ev.back()) <= 1e-8 * std::abs(ev.back()));
      CHECK(std::abs(e.m + ev.front()) <= 1e-8 * std::abs(ev.front()));
    }
  }

  TEST_CASE("composite_value") {
    CompositeProblem prob;
    prob.smooth = quadratic_oracle(Matrix::Zero(3, 3), Vector::Zero(3), 0.0, 0.0, 0.0);
    prob.nonsmooth = zero_function(3);
    prob.dimension = 3;
    CHECK(composite_value(prob, vec({4, -1, 2})) == 0.0);
    prob.nonsmooth = simplex_indicator(3);
    CHECK(composite_value(prob, vec({4, -1, 2})) == kInfinity);

    const QpInstance qp = generate_qp(4, 9, 50.0, 5.0, 8);
    Sampler rng(31);
    const Vector z = rng.simplex_point(9);
    // term-by-term recomputation
    const Vector dbz = qp.D_diag.asDiagonal() * (qp.B * z);
    const double direct = -0.5 * qp.alpha1 * dbz.squaredNorm() + 0.5 * qp.alpha2 * (qp.A * z - qp.b).squaredNorm();
    CHECK(composite_value(qp.problem(), z) == doctest::Approx(direct).epsilon(1e-10));
  }

  TEST_CASE("oracles validate their arguments") {
    const ProxOracle h = simplex_indicator(3);
    CHECK_THROWS_AS((void)h.prox(0.0, vec({1, 0, 0})), DomainError);
    CHECK_THROWS((void)h.prox(1.0, vec({1, 0})));
    CHECK_THROWS_AS(check_point(vec({1, NAN}), 2, "test"), DomainError);
  }

  TEST_CASE("Sampler is deterministic and simplex points are feasible") {
    Sampler a(99), b(99);
    for (int t = 0; t < 50; ++t) CHECK(a.uniform() == b.uniform());
    for (int t = 0; t < 50; ++t) {
      const auto k = a.uniform_int(1, 1000);
      CHECK(k >= 1);
      CHECK(k <= 1000);
      CHECK(in_simplex(a.simplex_point(7)));
    }
  }
}
