#pragma once

#include <cstdint>

#include "daipp/problem.hpp"

namespace daipp {

/// Nonconvex quadratic program over the unit simplex
///   f(z) = -(alpha1/2)|D B z|^2 + (alpha2/2)|A z - b|^2,  z in the simplex,
/// with D diagonal. (m, M) are the exact extreme curvatures of f.
struct QpInstance {
  Matrix A;       // l x n
  Matrix B;       // n x n
  Vector D_diag;  // n entries in {1, ..., 1000}
  Vector b;       // l
  double alpha1 = 0.0;
  double alpha2 = 0.0;
  double m = 0.0;  // -lambda_min(H)
  double M = 0.0;  // lambda_max(H)
  std::uint64_t seed = 0;  // seed that produced the accepted draw

  Matrix hessian;  // H = -alpha1 (DB)'(DB) + alpha2 A'A
  Vector linear;   // -alpha2 A'b
  double constant = 0.0;  // (alpha2/2)|b|^2

  [[nodiscard]] int l() const { return static_cast<int>(A.rows()); }
  [[nodiscard]] int n() const { return static_cast<int>(A.cols()); }

  /// f evaluated from the defining expression rather than from H.
  [[nodiscard]] double objective_direct(const Vector& z) const;

  /// Composite problem with h the simplex indicator and D = sqrt(2).
  [[nodiscard]] CompositeProblem problem() const;
};

/// Builds the instance from explicit data. Throws ParameterError unless both
/// scalars are positive, or when the Hessian has no negative eigenvalue.
[[nodiscard]] QpInstance make_qp_instance(Matrix A, Matrix B, Vector D_diag, Vector b,
                                          double alpha1, double alpha2, std::uint64_t seed = 0);

/// Random instance with A, B, b ~ U[0,1] and D ~ U{1..1000}, with (alpha1,
/// alpha2) calibrated so that (M, m) hit the targets to 1e-4 relative.
/// Draw order from std::mt19937_64(seed): A row-major, B row-major, b, D.
/// A draw that cannot be calibrated is retried with seed + 1, up to 10 times.
[[nodiscard]] QpInstance generate_qp(int l, int n, double target_M, double target_m,
                                     std::uint64_t seed);

/// Centroid (1/n, ..., 1/n) of the simplex.
[[nodiscard]] Vector simplex_centroid(int n);

}  // namespace daipp
