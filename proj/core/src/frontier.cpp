#include "sharpe_rmt/frontier.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "sharpe_rmt/errors.hpp"
#include "sharpe_rmt/rmt_core.hpp"

namespace sharpe_rmt {

namespace {

double clamped_quad(const Vector& w, const Matrix& s) {
  const double v = w.dot(s * w);
  if (v >= 0.0) return v;
  const Vector aw = w.cwiseAbs();
  if (-v <= 1e-12 * std::max(1.0, aw.dot(s.cwiseAbs() * aw))) return 0.0;
  throw DegenerateEstimateError("frontier: negative portfolio variance " + std::to_string(v));
}

}  // namespace

FrontierCoefficients frontier_coefficients(const Vector& r, const SampleMoments& moments,
                                           const RidgeSystem& system) {
  if (r.size() != moments.p) throw std::invalid_argument("frontier_coefficients: r has wrong length");
  const Vector ones = Vector::Ones(moments.p);
  const Vector k1 = system.solve(ones);
  const Vector kr = system.solve(r);
  FrontierCoefficients out;
  out.a = r.dot(k1);
  out.b = r.dot(kr);
  out.c = ones.dot(k1);
  out.d = out.b * out.c - out.a * out.a;
  if (!(out.d > kCollinearTol * out.b * out.c)) {
    throw DegenerateEstimateError("frontier_coefficients: r is (nearly) collinear with 1");
  }
  out.g = (out.b * k1 - out.a * kr) / out.d;
  out.h = (out.c * kr - out.a * k1) / out.d;
  out.correction = system.correction(moments.c);
  return out;
}

FrontierCoefficients frontier_coefficients(const Vector& r, const SampleMoments& moments, const Regularizer& reg) {
  return frontier_coefficients(r, moments, RidgeSystem(moments.sigma_hat, reg.matrix, default_solve_mode(reg)));
}

FrontierPoint frontier_point(const FrontierCoefficients& coeffs, double mu0, const SampleMoments& moments,
                             const Matrix* sigma_true) {
  if (!(coeffs.correction > 0.0)) {
    throw DegenerateEstimateError("frontier_point: correction factor is not positive");
  }
  FrontierPoint out;
  out.mu0 = mu0;
  out.weights = coeffs.g + mu0 * coeffs.h;
  out.sigma_hat_sq = clamped_quad(out.weights, moments.sigma_hat) / (coeffs.correction * coeffs.correction);
  out.sigma_hat = std::sqrt(out.sigma_hat_sq);
  if (sigma_true) {
    if (sigma_true->rows() != moments.p || sigma_true->cols() != moments.p) {
      throw std::invalid_argument("frontier_point: sigma_true dimension mismatch");
    }
    out.sigma_true = std::sqrt(clamped_quad(out.weights, *sigma_true));
  }
  return out;
}

AssumptionDiagnostics assumption_diagnostics(const Vector& r, const Matrix& sigma_true, const Regularizer& reg,
                                             double c) {
  if (r.size() != sigma_true.rows()) throw std::invalid_argument("assumption_diagnostics: r has wrong length");
  const double s0 = solve_s0(sigma_true, reg, c);
  const Matrix m = sigma_true / (1.0 + s0) + reg.matrix;
  Eigen::LLT<Matrix> llt(m);
  if (llt.info() != Eigen::Success) throw SingularSystemError("assumption_diagnostics: Sigma/(1+s0)+Q singular");
  const Vector ones = Vector::Ones(r.size());
  const Vector m1 = llt.solve(ones);
  AssumptionDiagnostics out;
  out.a_rr = r.dot(llt.solve(r));
  out.a_r1 = r.dot(m1);
  out.a_11 = ones.dot(m1);
  out.rho = out.a_r1 * out.a_r1 / (out.a_rr * out.a_11);
  return out;
}

}  // namespace sharpe_rmt
