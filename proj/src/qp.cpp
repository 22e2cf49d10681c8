#include "daipp/qp.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace daipp {

namespace {

Eigen::VectorXd eigenvalues(const Matrix& sym) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(sym, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw EstimationError("dense eigensolver failed");
  return solver.eigenvalues();
}

struct Spectrum {
  double lo = 0.0;
  double hi = 0.0;
};

Spectrum extremes(const Matrix& sym) {
  const Eigen::VectorXd ev = eigenvalues(sym);
  return Spectrum{ev.minCoeff(), ev.maxCoeff()};
}

}  // namespace

double QpInstance::objective_direct(const Vector& z) const {
  const Vector dbz = D_diag.asDiagonal() * (B * z);
  const Vector resid = A * z - b;
  return -0.5 * alpha1 * dbz.squaredNorm() + 0.5 * alpha2 * resid.squaredNorm();
}

CompositeProblem QpInstance::problem() const {
  CompositeProblem prob;
  prob.smooth = quadratic_oracle(hessian, linear, constant, m, M);
  prob.nonsmooth = simplex_indicator(n());
  prob.diameter = std::sqrt(2.0);
  prob.dimension = n();
  return prob;
}

QpInstance make_qp_instance(Matrix A, Matrix B, Vector D_diag, Vector b, double alpha1,
                            double alpha2, std::uint64_t seed) {
  if (A.cols() != B.cols() || B.rows() != B.cols() || D_diag.size() != B.rows() ||
      b.size() != A.rows()) {
    throw DomainError("make_qp_instance: inconsistent dimensions");
  }
  if (!(alpha1 > 0.0 && alpha2 > 0.0)) {
    throw ParameterError("make_qp_instance: alpha1 and alpha2 must be positive");
  }
  QpInstance qp;
  qp.A = std::move(A);
  qp.B = std::move(B);
  qp.D_diag = std::move(D_diag);
  qp.b = std::move(b);
  qp.alpha1 = alpha1;
  qp.alpha2 = alpha2;
  qp.seed = seed;

  const Matrix DB = qp.D_diag.asDiagonal() * qp.B;
  Matrix H = -alpha1 * (DB.transpose() * DB) + alpha2 * (qp.A.transpose() * qp.A);
  H = 0.5 * (H + H.transpose());
  const Spectrum s = extremes(H);
  qp.m = -s.lo;
  qp.M = s.hi;
  if (!(qp.m > 0.0)) {
    throw ParameterError("make_qp_instance: Hessian is positive semidefinite, so m <= 0");
  }
  if (!(qp.M >= qp.m)) {
    throw ParameterError("make_qp_instance: need lambda_max(H) >= -lambda_min(H)");
  }
  qp.hessian = std::move(H);
  qp.linear = -alpha2 * (qp.A.transpose() * qp.b);
  qp.constant = 0.5 * alpha2 * qp.b.squaredNorm();
  return qp;
}

Vector simplex_centroid(int n) { return Vector::Constant(n, 1.0 / n); }

namespace {

struct Calibration {
  bool ok = false;
  double alpha1 = 0.0;
  double alpha2 = 0.0;
};

// Finds r with -lambda_min / lambda_max of (-K1 + r K2) equal to `ratio`.
// That quotient is nonincreasing in r wherever lambda_max > 0, because both
// extreme eigenvalues are nondecreasing in r for K2 PSD.
Calibration calibrate(const Matrix& K1, const Matrix& K2, double target_M, double target_m) {
  const double p1 = extremes(K1).hi;
  const double p2 = extremes(K2).hi;
  if (!(p1 > 0.0) || !(p2 > 0.0)) return {};
  const Matrix K1n = K1 / p1;
  const Matrix K2n = K2 / p2;
  const double ratio = target_m / target_M;

  auto quotient = [&](double r) {
    const Spectrum s = extremes(-K1n + r * K2n);
    if (!(s.hi > 0.0)) return std::numeric_limits<double>::infinity();
    return -s.lo / s.hi;
  };

  double hi = 1.0;
  int guard = 0;
  while (quotient(hi) > ratio) {
    hi *= 4.0;
    if (++guard > 40) return {};
  }
  double lo = hi;
  guard = 0;
  while (quotient(lo) <= ratio) {
    lo /= 4.0;
    if (++guard > 80) return {};
  }
  for (int it = 0; it < 200; ++it) {
    const double mid = std::sqrt(lo * hi);
    if (quotient(mid) > ratio) {
      lo = mid;
    } else {
      hi = mid;
    }
    if (hi / lo - 1.0 < 1e-13) break;
  }
  const double r = hi;
  const Spectrum s = extremes(-K1n + r * K2n);
  const double scale = target_M / s.hi;
  return Calibration{true, scale / p1, r * scale / p2};
}

}  // namespace

QpInstance generate_qp(int l, int n, double target_M, double target_m, std::uint64_t seed) {
  if (l < 1 || n < 1) throw ParameterError("generate_qp: dimensions must be positive");
  if (!(target_m > 0.0) || !(target_M >= target_m)) {
    throw ParameterError("generate_qp: need target_M >= target_m > 0");
  }
  constexpr int kAttempts = 10;
  for (int attempt = 0; attempt < kAttempts; ++attempt) {
    const std::uint64_t s = seed + static_cast<std::uint64_t>(attempt);
    Sampler rng(s);
    Matrix A(l, n);
    for (int i = 0; i < l; ++i)
      for (int j = 0; j < n; ++j) A(i, j) = rng.uniform();
    Matrix B(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) B(i, j) = rng.uniform();
    Vector b(l);
    for (int i = 0; i < l; ++i) b[i] = rng.uniform();
    Vector D(n);
    for (int i = 0; i < n; ++i) D[i] = static_cast<double>(rng.uniform_int(1, 1000));

    const Matrix DB = D.asDiagonal() * B;
    const Calibration cal = calibrate(DB.transpose() * DB, A.transpose() * A, target_M, target_m);
    if (!cal.ok) continue;
    QpInstance qp;
    try {
      qp = make_qp_instance(std::move(A), std::move(B), std::move(D), std::move(b), cal.alpha1,
                            cal.alpha2, s);
    } catch (const ParameterError&) {
      continue;
    }
    if (std::abs(qp.M - target_M) <= 1e-4 * target_M &&
        std::abs(qp.m - target_m) <= 1e-4 * target_m) {
      return qp;
    }
  }
  throw EstimationError("generate_qp: calibration failed for " + std::to_string(kAttempts) +
                        " consecutive seeds");
}

}  // namespace daipp
