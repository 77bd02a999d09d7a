#include <benchmark/benchmark.h>

#include "ssde/lamperti.hpp"
#include "ssde/params.hpp"
#include "ssde/sde.hpp"
#include "ssde/stable.hpp"

namespace {

const ssde::Parameters& params() {
  static const ssde::Parameters p = ssde::Parameters::derive(1.5, 0.5, 0.5);
  return p;
}

ssde::SchemeConfig scheme(double eps) {
  ssde::SchemeConfig c;
  c.grid_step = 1e-3;
  c.jump_cutoff = eps;
  c.horizon = 1.0;
  return c;
}

void BM_StableIncrement(benchmark::State& state) {
  const double alpha = static_cast<double>(state.range(0)) / 10.0;
  ssde::RngStream rng(1, 0);
  for (auto _ : state) benchmark::DoNotOptimize(ssde::sample_stable_increment(1.0, alpha, rng));
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_StableIncrement)->Arg(12)->Arg(15)->Arg(18);

void BM_JumpsAbove(benchmark::State& state) {
  const double eps = 1.0 / static_cast<double>(state.range(0));
  ssde::RngStream rng(2, 0);
  for (auto _ : state) benchmark::DoNotOptimize(ssde::sample_jumps_above(eps, 0.0, 1.0, 1.5, rng));
}
BENCHMARK(BM_JumpsAbove)->Arg(10)->Arg(100)->Arg(1000);

void BM_ZSchemeTerminal(benchmark::State& state) {
  const ssde::ZScheme z(params(), scheme(1.0 / static_cast<double>(state.range(0))));
  ssde::RngStream rng(3, 0);
  for (auto _ : state) benchmark::DoNotOptimize(z.terminal(1.0, rng));
}
BENCHMARK(BM_ZSchemeTerminal)->Arg(100)->Arg(1000)->Unit(benchmark::kMicrosecond);

void BM_VSchemePath(benchmark::State& state) {
  const ssde::VScheme v(params(), scheme(1.0 / static_cast<double>(state.range(0))));
  ssde::RngStream rng(4, 0);
  for (auto _ : state) benchmark::DoNotOptimize(v.simulate(1.0, rng));
}
BENCHMARK(BM_VSchemePath)->Arg(100)->Arg(1000)->Unit(benchmark::kMicrosecond);

void BM_XiTerminal(benchmark::State& state) {
  ssde::XiConfig cfg;
  cfg.cutoff = 1.0 / static_cast<double>(state.range(0));
  cfg.grid_step = 1e-2;
  const ssde::XiScheme xi(params(), cfg);
  ssde::RngStream rng(5, 0);
  for (auto _ : state) benchmark::DoNotOptimize(xi.terminal(1.0, rng));
}
BENCHMARK(BM_XiTerminal)->Arg(100)->Arg(1000)->Unit(benchmark::kMicrosecond);

void BM_LampertiTerminal(benchmark::State& state) {
  ssde::XiConfig cfg;
  cfg.cutoff = 1e-2;
  cfg.grid_step = 1e-3;
  ssde::RngStream rng(6, 0);
  for (auto _ : state) benchmark::DoNotOptimize(ssde::lamperti_terminal(params(), 1.0, 0.5, rng, cfg));
}
BENCHMARK(BM_LampertiTerminal)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
