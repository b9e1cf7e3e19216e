#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sharpe_rmt/linalg.hpp"
#include "sharpe_rmt/moments.hpp"
#include "sharpe_rmt/rng.hpp"

namespace sharpe_rmt {

enum class SigmaKind { sigma0, sigma1, sigma2, sigma3, custom };
enum class MuKind { mu0, mu1, mu2, mu3, mu4, custom };
enum class QKind { q0_scaled, q1, q2, q3, identity_scaled, zero, custom };

const char* to_string(SigmaKind k);
const char* to_string(MuKind k);
const char* to_string(QKind k);
SigmaKind parse_sigma_kind(const std::string& s);
MuKind parse_mu_kind(const std::string& s);
QKind parse_q_kind(const std::string& s);

struct DesignSpec {
  int p = 0;
  SigmaKind sigma_kind = SigmaKind::sigma0;
  MuKind mu_kind = MuKind::mu0;
  QKind q_kind = QKind::q0_scaled;
  std::vector<double> q_grid;
  std::vector<double> mu0_grid;  // frontier targets
  std::uint64_t seed = 0;

  Matrix custom_sigma;
  Vector custom_mu;
  Matrix custom_q_base;

  // Throws std::invalid_argument on an inconsistent spec.
  void validate() const;
};

// Random ingredients of a design. Each is drawn from its own sub-stream of the design seed.
struct DesignDraws {
  Vector lambda;  // descending, in [0.01, 9]
  std::vector<int> s_plus;
  std::vector<int> s_minus;
  Vector xi1, xi2;  // orthogonal to each other and to 1, squared norm p
  Vector xi3;       // i.i.d. Gamma(1, 1)
  Vector mu1;       // i.i.d. U(-sqrt(2/p), sqrt(2/p))
};

inline constexpr double kLambdaLo = 0.01;
inline constexpr double kLambdaHi = 9.0;

DesignDraws draw_design(const DesignSpec& spec);

Matrix gen_sigma(const DesignSpec& spec, const DesignDraws& draws);
Vector gen_mu(const DesignSpec& spec, const DesignDraws& draws);
Matrix q0_matrix(int p);

// Q(q) = offset + q * base
struct RegularizerFamily {
  QKind kind = QKind::q0_scaled;
  Matrix offset;
  Matrix base;
  std::string name;

  Regularizer at(double q) const;
  bool base_is_zero() const { return is_zero(base); }
};

RegularizerFamily gen_q(const DesignSpec& spec, const DesignDraws& draws);

// (1:30)/5 when c < 1, (1:30)/1.5 otherwise
std::vector<double> default_q_grid(double c);

struct Design {
  DesignSpec spec;
  DesignDraws draws;
  Matrix sigma;
  Vector mu;
  RegularizerFamily q_family;
};

Design build_design(const DesignSpec& spec);

// Rows i.i.d. N(mu, Sigma) as Z * Sigma^{1/2} + 1 mu'. Z is filled row by row.
class GaussianSampler {
 public:
  GaussianSampler(Vector mu, const Matrix& sigma);
  ReturnsPanel sample(Eigen::Index n, Rng& rng) const;
  const Matrix& sqrt_sigma() const { return root_; }

 private:
  Vector mu_;
  Matrix root_;
};

ReturnsPanel sample_returns(const Vector& mu, const Matrix& sigma, Eigen::Index n, std::uint64_t seed);

}  // namespace sharpe_rmt
