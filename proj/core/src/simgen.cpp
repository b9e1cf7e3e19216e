#include "sharpe_rmt/simgen.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>
#include <utility>

namespace sharpe_rmt {

const char* to_string(SigmaKind k) {
  switch (k) {
    case SigmaKind::sigma0: return "sigma0";
    case SigmaKind::sigma1: return "sigma1";
    case SigmaKind::sigma2: return "sigma2";
    case SigmaKind::sigma3: return "sigma3";
    case SigmaKind::custom: return "custom";
  }
  return "?";
}

const char* to_string(MuKind k) {
  switch (k) {
    case MuKind::mu0: return "mu0";
    case MuKind::mu1: return "mu1";
    case MuKind::mu2: return "mu2";
    case MuKind::mu3: return "mu3";
    case MuKind::mu4: return "mu4";
    case MuKind::custom: return "custom";
  }
  return "?";
}

const char* to_string(QKind k) {
  switch (k) {
    case QKind::q0_scaled: return "q0_scaled";
    case QKind::q1: return "q1";
    case QKind::q2: return "q2";
    case QKind::q3: return "q3";
    case QKind::identity_scaled: return "identity_scaled";
    case QKind::zero: return "zero";
    case QKind::custom: return "custom";
  }
  return "?";
}

SigmaKind parse_sigma_kind(const std::string& s) {
  for (auto k : {SigmaKind::sigma0, SigmaKind::sigma1, SigmaKind::sigma2, SigmaKind::sigma3, SigmaKind::custom}) {
    if (s == to_string(k)) return k;
  }
  throw std::invalid_argument("unknown sigma kind '" + s + "'");
}

MuKind parse_mu_kind(const std::string& s) {
  for (auto k : {MuKind::mu0, MuKind::mu1, MuKind::mu2, MuKind::mu3, MuKind::mu4, MuKind::custom}) {
    if (s == to_string(k)) return k;
  }
  throw std::invalid_argument("unknown mu kind '" + s + "'");
}

QKind parse_q_kind(const std::string& s) {
  for (auto k : {QKind::q0_scaled, QKind::q1, QKind::q2, QKind::q3, QKind::identity_scaled, QKind::zero,
                 QKind::custom}) {
    if (s == to_string(k)) return k;
  }
  throw std::invalid_argument("unknown q kind '" + s + "'");
}

namespace {

bool needs_subsets(MuKind k) { return k == MuKind::mu0 || k == MuKind::mu3 || k == MuKind::mu4; }

bool needs_q0(QKind k) { return k == QKind::q0_scaled || k == QKind::q1 || k == QKind::q2; }

void check_grid(const std::vector<double>& grid, const char* name) {
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!std::isfinite(grid[i])) throw std::invalid_argument(std::string(name) + " has non-finite values");
    if (i > 0 && !(grid[i] > grid[i - 1])) {
      throw std::invalid_argument(std::string(name) + " must be strictly increasing");
    }
  }
}

}  // namespace

void DesignSpec::validate() const {
  if (p < 1) throw std::invalid_argument("design p must be >= 1");
  if (needs_subsets(mu_kind) && p % 10 != 0) {
    throw std::invalid_argument("design p must be divisible by 10 for " + std::string(to_string(mu_kind)));
  }
  if (needs_q0(q_kind) && p % 2 != 0) throw std::invalid_argument("design p must be even for Q0");
  if (q_grid.empty()) throw std::invalid_argument("q grid must be non-empty");
  check_grid(q_grid, "q grid");
  check_grid(mu0_grid, "mu0 grid");
  for (double q : q_grid) {
    if (q < 0.0) throw std::invalid_argument("q grid values must be >= 0");
  }
  const auto pp = static_cast<Eigen::Index>(p);
  if (sigma_kind == SigmaKind::custom && (custom_sigma.rows() != pp || custom_sigma.cols() != pp)) {
    throw std::invalid_argument("custom sigma must be p x p");
  }
  if (mu_kind == MuKind::custom && custom_mu.size() != pp) throw std::invalid_argument("custom mu must have length p");
  if (q_kind == QKind::custom && (custom_q_base.rows() != pp || custom_q_base.cols() != pp)) {
    throw std::invalid_argument("custom Q base must be p x p");
  }
}

DesignDraws draw_design(const DesignSpec& spec) {
  spec.validate();
  const int p = spec.p;
  DesignDraws d;

  Rng lam(spec.seed, "design/lambda");
  d.lambda.resize(p);
  for (int i = 0; i < p; ++i) d.lambda(i) = lam.inverse_gamma_truncated(kLambdaLo, kLambdaHi);
  std::sort(d.lambda.data(), d.lambda.data() + p, std::greater<>());

  Rng sub(spec.seed, "design/subsets");
  const std::vector<int> perm = sub.permutation(p);
  const int k = p / 10;
  d.s_plus.assign(perm.begin(), perm.begin() + k);
  d.s_minus.assign(perm.begin() + k, perm.begin() + 2 * k);

  Rng xi(spec.seed, "design/xi12");
  const Vector ones = Vector::Ones(p);
  auto orthogonal_draw = [&](const std::vector<const Vector*>& against) {
    Vector v(p);
    for (int i = 0; i < p; ++i) v(i) = xi.normal();
    for (const Vector* a : against) v -= (a->dot(v) / a->squaredNorm()) * *a;
    for (const Vector* a : against) v -= (a->dot(v) / a->squaredNorm()) * *a;
    return Vector(v * std::sqrt(static_cast<double>(p)) / v.norm());
  };
  if (p >= 3) {
    d.xi1 = orthogonal_draw({&ones});
    d.xi2 = orthogonal_draw({&ones, &d.xi1});
  }

  Rng g(spec.seed, "design/xi3");
  d.xi3.resize(p);
  for (int i = 0; i < p; ++i) d.xi3(i) = g.exponential();

  Rng u(spec.seed, "design/mu1");
  const double half = std::sqrt(2.0 / p);
  d.mu1.resize(p);
  for (int i = 0; i < p; ++i) d.mu1(i) = u.uniform(-half, half);
  return d;
}

namespace {

Matrix sigma0_from(const Vector& lambda) {
  const Eigen::Index p = lambda.size();
  Matrix s = Matrix::Constant(p, p, 2.0);
  s.diagonal() += lambda;
  return s;
}

Vector mu0_from(int p, const DesignDraws& d) {
  Vector mu = Vector::Zero(p);
  const double a = std::sqrt(5.0 / p);
  for (int i : d.s_plus) mu(i) = a;
  for (int i : d.s_minus) mu(i) = -a;
  return mu;
}

}  // namespace

Matrix gen_sigma(const DesignSpec& spec, const DesignDraws& draws) {
  switch (spec.sigma_kind) {
    case SigmaKind::sigma0:
      return sigma0_from(draws.lambda);
    case SigmaKind::sigma1:
      return Matrix(draws.lambda.asDiagonal());
    case SigmaKind::sigma2: {
      if (spec.p < 3) throw std::invalid_argument("sigma2 needs p >= 3");
      Matrix s = sigma0_from(draws.lambda);
      s += draws.xi1 * draws.xi1.transpose() + draws.xi2 * draws.xi2.transpose();
      return s;
    }
    case SigmaKind::sigma3: {
      Matrix s = sigma0_from(draws.lambda);
      s += draws.xi3 * draws.xi3.transpose();
      return s;
    }
    case SigmaKind::custom:
      require_psd(spec.custom_sigma, "custom sigma");
      return spec.custom_sigma;
  }
  throw std::invalid_argument("unknown sigma kind");
}

Vector gen_mu(const DesignSpec& spec, const DesignDraws& draws) {
  const int p = spec.p;
  const Vector ones = Vector::Ones(p);
  switch (spec.mu_kind) {
    case MuKind::mu0:
      return mu0_from(p, draws);
    case MuKind::mu1:
      return draws.mu1;
    case MuKind::mu2:
      return draws.mu1 + 2.0 * ones;
    case MuKind::mu3:
      return std::pow(static_cast<double>(p), 0.25) * mu0_from(p, draws) + 2.0 * ones;
    case MuKind::mu4:
      return mu0_from(p, draws) + 2.0 * ones + draws.xi3;
    case MuKind::custom:
      return spec.custom_mu;
  }
  throw std::invalid_argument("unknown mu kind");
}

Matrix q0_matrix(int p) {
  if (p % 2 != 0) throw std::invalid_argument("Q0 needs even p");
  Vector d(p);
  d.head(p / 2).setConstant(3.0);
  d.tail(p / 2).setConstant(1.0);
  return Matrix(d.asDiagonal());
}

Regularizer RegularizerFamily::at(double q) const {
  Regularizer r;
  if (is_zero(offset)) {
    r = Regularizer::scaled(q, base, name);
  } else {
    r.matrix = offset + q * base;
    r.scale = q;
    r.base = name;
    r.label = name + "(q=" + format_scale(q) + ")";
    r.allow_zero = false;
  }
  return r;
}

RegularizerFamily gen_q(const DesignSpec& spec, const DesignDraws& draws) {
  const int p = spec.p;
  RegularizerFamily f;
  f.kind = spec.q_kind;
  f.offset = Matrix::Zero(p, p);
  switch (spec.q_kind) {
    case QKind::q0_scaled:
      f.base = q0_matrix(p);
      f.name = "Q0";
      break;
    case QKind::q1:
      f.offset = 0.1 * q0_matrix(p);
      f.base = Matrix(draws.lambda.asDiagonal());
      f.name = "Q1";
      break;
    case QKind::q2:
      f.offset = 0.5 * Matrix::Identity(p, p);
      f.base = q0_matrix(p);
      f.name = "Q2";
      break;
    case QKind::q3:
      f.base = sigma0_from(draws.lambda);
      f.name = "Sigma0";
      break;
    case QKind::identity_scaled:
      f.base = Matrix::Identity(p, p);
      f.name = "I";
      break;
    case QKind::zero:
      f.base = Matrix::Zero(p, p);
      f.name = "zero";
      break;
    case QKind::custom:
      require_psd(spec.custom_q_base, "custom Q base");
      f.base = spec.custom_q_base;
      f.name = "custom";
      break;
  }
  return f;
}

std::vector<double> default_q_grid(double c) {
  std::vector<double> grid;
  const double div = c < 1.0 ? 5.0 : 1.5;
  for (int i = 1; i <= 30; ++i) grid.push_back(i / div);
  return grid;
}

Design build_design(const DesignSpec& spec) {
  Design d;
  d.spec = spec;
  d.draws = draw_design(spec);
  d.sigma = gen_sigma(spec, d.draws);
  d.mu = gen_mu(spec, d.draws);
  d.q_family = gen_q(spec, d.draws);
  return d;
}

GaussianSampler::GaussianSampler(Vector mu, const Matrix& sigma) : mu_(std::move(mu)) {
  if (sigma.rows() != mu_.size() || sigma.cols() != mu_.size()) {
    throw std::invalid_argument("GaussianSampler: dimension mismatch");
  }
  require_psd(sigma, "Sigma");
  root_ = symmetric_sqrt(sigma);
}

ReturnsPanel GaussianSampler::sample(Eigen::Index n, Rng& rng) const {
  if (n < 2) throw std::invalid_argument("sample: n must be >= 2");
  const Eigen::Index p = mu_.size();
  Matrix z(n, p);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < p; ++j) z(i, j) = rng.normal();
  }
  ReturnsPanel panel;
  panel.data.noalias() = z * root_;
  panel.data.rowwise() += mu_.transpose();
  return panel;
}

ReturnsPanel sample_returns(const Vector& mu, const Matrix& sigma, Eigen::Index n, std::uint64_t seed) {
  Rng rng(seed, "returns");
  return GaussianSampler(mu, sigma).sample(n, rng);
}

}  // namespace sharpe_rmt
