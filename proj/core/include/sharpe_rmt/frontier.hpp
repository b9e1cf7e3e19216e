#pragma once

#include <optional>

#include "sharpe_rmt/linalg.hpp"
#include "sharpe_rmt/moments.hpp"

namespace sharpe_rmt {

struct FrontierCoefficients {
  double a = 0.0;  // r' K 1
  double b = 0.0;  // r' K r
  double c = 0.0;  // 1' K 1
  double d = 0.0;  // BC - A^2
  Vector g;
  Vector h;
  double correction = 1.0;  // 1 - (c/p) tr(sigma_hat K), carried for frontier_point
};

struct FrontierPoint {
  double mu0 = 0.0;
  std::optional<double> sigma_true;
  double sigma_hat = 0.0;
  double sigma_hat_sq = 0.0;
  Vector weights;
};

struct AssumptionDiagnostics {
  double a_rr = 0.0;
  double a_r1 = 0.0;
  double a_11 = 0.0;
  double rho = 0.0;
};

inline constexpr double kCollinearTol = 1e-12;

FrontierCoefficients frontier_coefficients(const Vector& r, const SampleMoments& moments,
                                           const RidgeSystem& system);
FrontierCoefficients frontier_coefficients(const Vector& r, const SampleMoments& moments, const Regularizer& reg);

FrontierPoint frontier_point(const FrontierCoefficients& coeffs, double mu0, const SampleMoments& moments,
                             const Matrix* sigma_true = nullptr);

AssumptionDiagnostics assumption_diagnostics(const Vector& r, const Matrix& sigma_true, const Regularizer& reg,
                                             double c);

}  // namespace sharpe_rmt
