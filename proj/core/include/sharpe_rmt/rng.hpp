#pragma once

#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

namespace sharpe_rmt {

// Generator contract: std::mt19937_64 (sequence fixed by the standard) seeded from
// derive_seed(seed, domain, index), a SplitMix64 mix of the inputs. All distributions are
// implemented here so outputs do not depend on the standard library vendor.
std::uint64_t splitmix64(std::uint64_t& state);
std::uint64_t fnv1a(std::string_view s);
std::uint64_t derive_seed(std::uint64_t seed, std::string_view domain, std::uint64_t index = 0);

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  Rng(std::uint64_t seed, std::string_view domain, std::uint64_t index = 0)
      : engine_(derive_seed(seed, domain, index)) {}

  std::uint64_t next() { return engine_(); }
  // [0, 1) with 53 random bits
  double uniform();
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  // Marsaglia polar method
  double normal();
  double exponential();
  // 1 / Exp(1), resampled until it lands in [lo, hi]
  double inverse_gamma_truncated(double lo, double hi);
  // uniform on [0, n)
  std::uint64_t below(std::uint64_t n);
  std::vector<int> permutation(int n);

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace sharpe_rmt
