#include <benchmark/benchmark.h>

#include <vector>

#include "sharpe_rmt/moments.hpp"
#include "sharpe_rmt/ridge_path.hpp"
#include "sharpe_rmt/rmt_core.hpp"
#include "sharpe_rmt/sharpe.hpp"
#include "sharpe_rmt/simgen.hpp"

using namespace sharpe_rmt;

namespace {

struct Fixture {
  Design design;
  SampleMoments moments;
};

Fixture make_fixture(int p) {
  DesignSpec spec;
  spec.p = p;
  spec.seed = 11;
  spec.q_grid = default_q_grid(0.5);
  Fixture f{build_design(spec), {}};
  const ReturnsPanel panel = sample_returns(f.design.mu, f.design.sigma, 2 * p, 5);
  f.moments = compute_sample_moments(panel, f.design.mu);
  return f;
}

std::vector<double> grid() { return default_q_grid(0.5); }

void BM_RidgeSystem(benchmark::State& state) {
  const Fixture f = make_fixture(static_cast<int>(state.range(0)));
  const Regularizer reg = f.design.q_family.at(1.0);
  for (auto _ : state) {
    RidgeSystem sys(f.moments.sigma_hat, reg.matrix);
    benchmark::DoNotOptimize(sys.trace_sigma_hat());
  }
}
BENCHMARK(BM_RidgeSystem)->Arg(100)->Arg(300)->Unit(benchmark::kMillisecond);

void BM_PluginStats(benchmark::State& state) {
  const Fixture f = make_fixture(static_cast<int>(state.range(0)));
  const Regularizer reg = f.design.q_family.at(1.0);
  for (auto _ : state) benchmark::DoNotOptimize(plugin_stats(f.moments, reg).f2);
}
BENCHMARK(BM_PluginStats)->Arg(100)->Arg(300)->Unit(benchmark::kMillisecond);

void BM_QGridGeneric(benchmark::State& state) {
  const Fixture f = make_fixture(static_cast<int>(state.range(0)));
  const std::vector<double> qs = grid();
  for (auto _ : state) {
    double acc = 0.0;
    for (double q : qs) {
      const Regularizer reg = f.design.q_family.at(q);
      RidgeSystem sys(f.moments.sigma_hat, reg.matrix);
      acc += sr_hat_known_mu(f.design.mu, f.moments, sys).value;
    }
    benchmark::DoNotOptimize(acc);
  }
}
BENCHMARK(BM_QGridGeneric)->Arg(100)->Arg(300)->Unit(benchmark::kMillisecond);

void BM_QGridRidgePath(benchmark::State& state) {
  const Fixture f = make_fixture(static_cast<int>(state.range(0)));
  const std::vector<double> qs = grid();
  for (auto _ : state) {
    RidgePath path(f.moments.sigma_hat, f.design.q_family.offset, f.design.q_family.base);
    const Vector a = path.project(f.design.mu);
    double acc = 0.0;
    for (double q : qs) {
      const Vector w = path.solve_projected(q, a);
      acc += f.design.mu.dot(w) * path.correction(q, f.moments.c);
    }
    benchmark::DoNotOptimize(acc);
  }
}
BENCHMARK(BM_QGridRidgePath)->Arg(100)->Arg(300)->Unit(benchmark::kMillisecond);

void BM_SolveS0(benchmark::State& state) {
  const Fixture f = make_fixture(static_cast<int>(state.range(0)));
  const RelativeSpectrum spectrum(f.design.sigma, f.design.q_family.at(1.0));
  for (auto _ : state) benchmark::DoNotOptimize(solve_s0_detailed(spectrum, 0.5).s0);
}
BENCHMARK(BM_SolveS0)->Arg(100)->Arg(1000);

void BM_RelativeSpectrum(benchmark::State& state) {
  const Fixture f = make_fixture(static_cast<int>(state.range(0)));
  const Regularizer reg = f.design.q_family.at(1.0);
  for (auto _ : state) benchmark::DoNotOptimize(RelativeSpectrum(f.design.sigma, reg).p());
}
BENCHMARK(BM_RelativeSpectrum)->Arg(100)->Arg(300)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
