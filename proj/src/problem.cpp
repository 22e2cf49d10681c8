#include "daipp/problem.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <vector>

namespace daipp {

void check_point(const Vector& x, int n, const char* what) {
  if (n > 0 && x.size() != n) {
    throw DomainError(std::string(what) + ": expected dimension " + std::to_string(n) +
                      ", got " + std::to_string(x.size()));
  }
  if (!x.allFinite()) {
    throw DomainError(std::string(what) + ": non-finite entry");
  }
}

double AffineModel::operator()(const Vector& x) const {
  if (origin.size() == 0) return intercept + slope.dot(x);
  return intercept + slope.dot(x - origin);
}

double AffineModel::constant_term() const {
  if (origin.size() == 0) return intercept;
  return intercept - slope.dot(origin);
}

AffineModel AffineModel::recentered(const Vector& new_origin) const {
  return AffineModel{slope, (*this)(new_origin), new_origin};
}

AffineModel linearize(const SmoothOracle& smooth, const Vector& x) {
  check_point(x, -1, "linearize");
  Vector g = smooth.grad(x);
  const double fx = smooth.eval(x);
  const double intercept = fx - g.dot(x);
  return AffineModel{std::move(g), intercept, Vector()};
}

AffineModel linearize(const SmoothOracle& smooth, const Vector& x, const Vector& origin) {
  check_point(x, -1, "linearize");
  Vector g = smooth.grad(x);
  const double fx = smooth.eval(x);
  const double at_origin = fx + g.dot(origin - x);
  return AffineModel{std::move(g), at_origin, origin};
}

Vector project_simplex(const Vector& p) {
  const Eigen::Index n = p.size();
  if (n == 0) throw DomainError("project_simplex: empty vector");
  if (p.hasNaN()) throw DomainError("project_simplex: NaN input");
  if (!p.allFinite()) throw DomainError("project_simplex: infinite input");

  std::vector<double> sorted(p.data(), p.data() + n);
  std::sort(sorted.begin(), sorted.end(), std::greater<>());

  // Largest k with sorted[k-1] > (sum_{i<k} sorted[i] - 1) / k.
  double prefix = 0.0;
  double tau = 0.0;
  for (Eigen::Index k = 0; k < n; ++k) {
    prefix += sorted[static_cast<std::size_t>(k)];
    const double candidate = (prefix - 1.0) / static_cast<double>(k + 1);
    if (sorted[static_cast<std::size_t>(k)] - candidate > 0.0) tau = candidate;
  }
  return (p.array() - tau).max(0.0).matrix();
}

bool in_simplex(const Vector& x, double tol) {
  if (!x.allFinite()) return false;
  return x.minCoeff() >= -tol && std::abs(x.sum() - 1.0) <= tol * std::max(1.0, double(x.size()));
}

namespace {

struct PowerResult {
  double value = 0.0;
  bool converged = false;
};

// Dominant eigenvalue of a symmetric map whose spectrum is known to be
// nonnegative, so the largest-magnitude eigenvalue is the largest one.
PowerResult power_iteration(const std::function<Vector(const Vector&)>& apply, int n,
                            double tol, int max_iterations, std::uint64_t seed) {
  Sampler sampler(seed);
  Vector v(n);
  for (int i = 0; i < n; ++i) v[i] = sampler.normal();
  v.normalize();

  PowerResult out;
  double previous = 0.0;
  for (int it = 0; it < max_iterations; ++it) {
    Vector w = apply(v);
    const double rayleigh = v.dot(w);
    const double residual = (w - rayleigh * v).norm();
    const double wn = w.norm();
    out.value = rayleigh;
    if (wn == 0.0) {
      out.converged = true;
      return out;
    }
    const double scale = std::max(std::abs(rayleigh), 1e-300);
    // For symmetric maps |rayleigh - eigenvalue| <= residual^2 / gap, but the
    // gap is unknown; requiring residual <= tol * scale plus a stalled
    // Rayleigh quotient is a practical certificate.
    if (it > 0 && residual <= tol * scale && std::abs(rayleigh - previous) <= tol * tol * scale) {
      out.converged = true;
      return out;
    }
    previous = rayleigh;
    v = w / wn;
  }
  return out;
}

CurvatureEstimate dense_extremes(const std::function<Vector(const Vector&)>& apply, int n) {
  Matrix h(n, n);
  for (int j = 0; j < n; ++j) h.col(j) = apply(Vector::Unit(n, j));
  const Matrix sym = 0.5 * (h + h.transpose());
  Eigen::SelfAdjointEigenSolver<Matrix> solver(sym, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw EstimationError("estimate_curvature: dense eigensolver failed");
  }
  const auto& ev = solver.eigenvalues();
  return CurvatureEstimate{-ev.minCoeff(), ev.maxCoeff()};
}

}  // namespace

CurvatureEstimate estimate_curvature(const std::function<Vector(const Vector&)>& hessian_apply,
                                     int n, double tol, int max_iterations) {
  if (n <= 0) throw DomainError("estimate_curvature: n must be positive");
  if (!(tol > 0.0)) throw DomainError("estimate_curvature: tol must be positive");
  constexpr int kDenseLimit = 512;

  // Spectral radius bound from |H|_inf-style probing would need the matrix;
  // use a few power steps on H^2 instead, which is PSD.
  auto squared = [&](const Vector& x) { return hessian_apply(hessian_apply(x)); };
  const PowerResult radius_sq = power_iteration(squared, n, 1e-3, 200, 0x5eedULL);
  const double shift = 1.1 * std::sqrt(std::max(radius_sq.value, 0.0)) + 1e-300;

  auto upper = [&](const Vector& x) { Vector y = hessian_apply(x); y += shift * x; return y; };
  auto lower = [&](const Vector& x) { Vector y = shift * x; y -= hessian_apply(x); return y; };
  const PowerResult top = power_iteration(upper, n, tol, max_iterations, 0x1234ULL);
  const PowerResult bottom = power_iteration(lower, n, tol, max_iterations, 0x4321ULL);

  if (top.converged && bottom.converged) {
    return CurvatureEstimate{bottom.value - shift, top.value - shift};
  }
  if (n <= kDenseLimit) return dense_extremes(hessian_apply, n);
  throw EstimationError("estimate_curvature: power iteration did not converge in " +
                        std::to_string(max_iterations) + " iterations");
}

double composite_value(const CompositeProblem& prob, const Vector& z) {
  const double hz = prob.nonsmooth.eval(z);
  if (!(hz < kInfinity)) return kInfinity;
  return prob.smooth.eval(z) + hz;
}

ProxOracle simplex_indicator(int n, double tol) {
  ProxOracle h;
  h.eval = [n, tol](const Vector& x) {
    if (x.size() != n) throw DomainError("simplex indicator: dimension mismatch");
    return in_simplex(x, tol) ? 0.0 : kInfinity;
  };
  h.prox = [n](double t, const Vector& p) {
    if (!(t > 0.0)) throw DomainError("simplex prox: stepsize must be positive");
    if (p.size() != n) throw DomainError("simplex prox: dimension mismatch");
    return project_simplex(p);
  };
  return h;
}

ProxOracle zero_function(int n) {
  ProxOracle h;
  h.eval = [n](const Vector& x) {
    if (x.size() != n) throw DomainError("zero function: dimension mismatch");
    return 0.0;
  };
  h.prox = [n](double t, const Vector& p) {
    if (!(t > 0.0)) throw DomainError("zero prox: stepsize must be positive");
    if (p.size() != n) throw DomainError("zero prox: dimension mismatch");
    return Vector(p);
  };
  return h;
}

SmoothOracle quadratic_oracle(Matrix hessian, Vector linear, double constant,
                              double curvature_lower, double curvature_upper) {
  if (hessian.rows() != hessian.cols() || hessian.rows() != linear.size()) {
    throw DomainError("quadratic_oracle: inconsistent dimensions");
  }
  const auto n = static_cast<int>(linear.size());
  SmoothOracle f;
  f.eval = [hessian, linear, constant, n](const Vector& x) {
    check_point(x, n, "quadratic eval");
    return 0.5 * x.dot(hessian * x) + linear.dot(x) + constant;
  };
  f.grad = [hessian, linear, n](const Vector& x) -> Vector {
    check_point(x, n, "quadratic grad");
    return hessian * x + linear;
  };
  f.curvature_lower = curvature_lower;
  f.curvature_upper = curvature_upper;
  return f;
}

Sampler::Sampler(std::uint64_t seed) : engine_(seed) {}

double Sampler::uniform() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

std::int64_t Sampler::uniform_int(std::int64_t lo, std::int64_t hi) {
  const auto range = static_cast<std::uint64_t>(hi - lo) + 1;
  // Rejection sampling keeps every value equally likely.
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % range;
  std::uint64_t draw = engine_();
  while (draw >= limit) draw = engine_();
  return lo + static_cast<std::int64_t>(draw % range);
}

double Sampler::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_normal_;
  }
  double u1 = uniform();
  while (u1 <= 0.0) u1 = uniform();
  const double u2 = uniform();
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * M_PI * u2;
  spare_normal_ = radius * std::sin(angle);
  has_spare_ = true;
  return radius * std::cos(angle);
}

Vector Sampler::simplex_point(int n) {
  Vector x(n);
  for (int i = 0; i < n; ++i) {
    double u = uniform();
    while (u <= 0.0) u = uniform();
    x[i] = -std::log(u);
  }
  return x / x.sum();
}

}  // namespace daipp
