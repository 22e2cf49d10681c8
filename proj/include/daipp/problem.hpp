#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <functional>
#include <limits>
#include <random>
#include <utility>

#include "daipp/errors.hpp"

namespace daipp {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// Smooth part f of a composite objective together with its curvature pair.
///
/// `curvature_lower` is the weak-convexity modulus m, i.e.
/// f(u) >= f(x) + <grad f(x), u - x> - (m/2)|u - x|^2, and `curvature_upper`
/// is the Lipschitz constant M of the gradient.
struct SmoothOracle {
  std::function<double(const Vector&)> eval;
  std::function<Vector(const Vector&)> grad;
  double curvature_lower = 0.0;
  double curvature_upper = 0.0;
};

/// Closed convex part h. `eval` returns +inf outside dom h and `prox(t, p)`
/// returns argmin_u { h(u) + |u - p|^2 / (2t) }.
struct ProxOracle {
  std::function<double(const Vector&)> eval;
  std::function<Vector(double, const Vector&)> prox;
};

/// min f(z) + h(z) over R^n, with D an upper bound on the diameter of dom h.
///
/// `omega_projection` projects onto the closed convex set on which f is
/// defined; leave it empty when f is defined on all of R^n.
struct CompositeProblem {
  SmoothOracle smooth;
  ProxOracle nonsmooth;
  double diameter = 0.0;
  int dimension = 0;
  std::function<Vector(const Vector&)> omega_projection;
};

/// Affine function x -> intercept + <slope, x - origin>.
///
/// An empty `origin` stands for the zero vector, so the default form is
/// intercept + <slope, x>. Solvers keep the origin near their iterates to
/// avoid cancellation between a large intercept and a large inner product.
struct AffineModel {
  Vector slope;
  double intercept = 0.0;
  Vector origin;

  [[nodiscard]] double operator()(const Vector& x) const;
  /// Value at the zero vector.
  [[nodiscard]] double constant_term() const;
  /// Same function expressed around a different origin.
  [[nodiscard]] AffineModel recentered(const Vector& new_origin) const;
};

/// First-order model of `smooth` at x, in origin-free form.
[[nodiscard]] AffineModel linearize(const SmoothOracle& smooth, const Vector& x);

/// First-order model of `smooth` at x, expressed around `origin`.
[[nodiscard]] AffineModel linearize(const SmoothOracle& smooth, const Vector& x,
                                    const Vector& origin);

/// Euclidean projection onto the unit simplex {x >= 0, sum x = 1}.
[[nodiscard]] Vector project_simplex(const Vector& p);

/// True when x lies in the unit simplex up to `tol`.
[[nodiscard]] bool in_simplex(const Vector& x, double tol = 1e-9);

struct CurvatureEstimate {
  double m = 0.0;  // minus the smallest eigenvalue
  double M = 0.0;  // largest eigenvalue
};

/// Extreme eigenvalues of a symmetric linear map given only through
/// matrix-vector products. Power iteration runs first; maps of dimension
/// n <= 512 fall back to a dense eigendecomposition if it stalls.
///
/// Returns m = -lambda_min and M = lambda_max. A positive semidefinite map
/// yields m <= 0, which callers must reject when they need weak convexity.
[[nodiscard]] CurvatureEstimate estimate_curvature(
    const std::function<Vector(const Vector&)>& hessian_apply, int n, double tol,
    int max_iterations = 20000);

/// f(z) + h(z); +inf outside dom h.
[[nodiscard]] double composite_value(const CompositeProblem& prob, const Vector& z);

// ---------------------------------------------------------------------------
// Oracle builders
// ---------------------------------------------------------------------------

/// Indicator of the unit simplex in R^n. The prox ignores its stepsize.
[[nodiscard]] ProxOracle simplex_indicator(int n, double tol = 1e-9);

/// h = 0 on R^n.
[[nodiscard]] ProxOracle zero_function(int n);

/// f(x) = 0.5 x'Hx + <g, x> + c. The curvature pair is taken as given.
[[nodiscard]] SmoothOracle quadratic_oracle(Matrix hessian, Vector linear, double constant,
                                            double curvature_lower, double curvature_upper);

/// Validates dimension and finiteness of an oracle argument.
void check_point(const Vector& x, int n, const char* what);

/// Deterministic source of uniform variates shared by generators and
/// sampled certificate checks (std::mt19937_64 under the hood).
class Sampler {
 public:
  explicit Sampler(std::uint64_t seed);
  /// Uniform on [0, 1), 53-bit resolution.
  double uniform();
  /// Uniform integer in [lo, hi], unbiased.
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi);
  /// Standard normal via Box-Muller.
  double normal();
  /// Dirichlet(1, ..., 1) sample, i.e. a uniform point of the simplex.
  Vector simplex_point(int n);

 private:
  std::mt19937_64 engine_;
  double spare_normal_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace daipp
