#pragma once

#include <cstdint>
#include <random>

#include <Eigen/Dense>

namespace sharpe_rmt::testing {

// Hand-rolled instance generators for property tests (std::mt19937_64 + std distributions,
// not the library Rng).
class Gen {
 public:
  explicit Gen(std::uint64_t seed) : eng_(seed) {}

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(eng_); }
  double normal() { return std::normal_distribution<double>(0.0, 1.0)(eng_); }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(eng_); }

  Eigen::VectorXd vector(Eigen::Index p) {
    Eigen::VectorXd v(p);
    for (Eigen::Index i = 0; i < p; ++i) v(i) = normal();
    return v;
  }

  Eigen::MatrixXd gaussian(Eigen::Index rows, Eigen::Index cols) {
    Eigen::MatrixXd m(rows, cols);
    for (Eigen::Index j = 0; j < cols; ++j)
      for (Eigen::Index i = 0; i < rows; ++i) m(i, j) = normal();
    return m;
  }

  // Wishart-like: G'G/k + floor*I
  Eigen::MatrixXd spd(Eigen::Index p, double floor = 0.1) {
    const Eigen::MatrixXd g = gaussian(p + 3, p);
    Eigen::MatrixXd s = g.transpose() * g / static_cast<double>(p + 3);
    s.diagonal().array() += floor;
    return 0.5 * (s + s.transpose());
  }

  // PSD of the given rank
  Eigen::MatrixXd psd_rank(Eigen::Index p, Eigen::Index rank) {
    const Eigen::MatrixXd g = gaussian(p, rank);
    Eigen::MatrixXd s = g * g.transpose() / static_cast<double>(rank);
    return 0.5 * (s + s.transpose());
  }

  Eigen::MatrixXd diag_positive(Eigen::Index p, double lo, double hi) {
    Eigen::VectorXd d(p);
    for (Eigen::Index i = 0; i < p; ++i) d(i) = uniform(lo, hi);
    return d.asDiagonal();
  }

  std::mt19937_64& engine() { return eng_; }

 private:
  std::mt19937_64 eng_;
};

}  // namespace sharpe_rmt::testing
