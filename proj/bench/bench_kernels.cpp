// Serial reference vs OpenMP kernels; run with --benchmark_filter as needed.
#include <benchmark/benchmark.h>

#include <functional>
#include <vector>

#include "fuzzyf/coverings.hpp"
#include "fuzzyf/fixpoint.hpp"
#include "fuzzyf/fmetric.hpp"
#include "fuzzyf/satellite.hpp"

namespace {

using namespace fuzzyf;

void bm_fm4_scan(benchmark::State& state, Exec exec) {
  auto cfg = canonical_config();
  auto sampler = interval_sampler(-5.0, 5.0);
  AxiomOptions opt;
  opt.chain_samples = state.range(0);
  opt.exec = exec;
  for (auto _ : state) {
    auto r = fm4_chain_scan(cfg, sampler, opt);
    benchmark::DoNotOptimize(r.worst_slack);
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void bm_contraction(benchmark::State& state, Exec exec) {
  auto cfg = canonical_config();
  std::function<double(const double&)> map = [](const double& x) {
    return x / 6.0;
  };
  auto sampler = interval_sampler(-5.0, 5.0);
  const std::vector<double> grid{0.5, 1.0, 2.0};
  for (auto _ : state) {
    auto r = verify_contraction(cfg, map, PsiFn::sqrt_root(), sampler,
                                state.range(0), grid, 42, exec);
    benchmark::DoNotOptimize(r.min_margin);
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void bm_bvp_apply(benchmark::State& state, Exec exec) {
  BvpConfig cfg;
  cfg.grid_size = static_cast<int>(state.range(0));
  BvpOperator op(cfg);
  GridFunction w = GridFunction::constant(cfg.grid_size, 1.0);
  for (auto _ : state) {
    auto out = op.apply(w, exec);
    benchmark::DoNotOptimize(out[0]);
  }
  state.SetItemsProcessed(state.iterations() * state.range(0) * state.range(0));
}

void bm_pairwise_min(benchmark::State& state, Exec exec) {
  SplitMix64 rng(7);
  std::vector<double> pts;
  for (long i = 0; i < state.range(0); ++i) pts.push_back(rng.uniform(-5.0, 5.0));
  FiniteSubset<double> set{std::move(pts), canonical_config()};
  for (auto _ : state) {
    benchmark::DoNotOptimize(pairwise_min_grade(set, 1.0, exec));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0) * state.range(0) / 2);
}

}  // namespace

BENCHMARK_CAPTURE(bm_fm4_scan, serial, Exec::serial)->Arg(10000)->Arg(40000);
BENCHMARK_CAPTURE(bm_fm4_scan, parallel, Exec::parallel)->Arg(10000)->Arg(40000);
BENCHMARK_CAPTURE(bm_contraction, serial, Exec::serial)->Arg(100000);
BENCHMARK_CAPTURE(bm_contraction, parallel, Exec::parallel)->Arg(100000);
BENCHMARK_CAPTURE(bm_bvp_apply, serial, Exec::serial)->Arg(201)->Arg(801);
BENCHMARK_CAPTURE(bm_bvp_apply, parallel, Exec::parallel)->Arg(201)->Arg(801);
BENCHMARK_CAPTURE(bm_pairwise_min, serial, Exec::serial)->Arg(2000);
BENCHMARK_CAPTURE(bm_pairwise_min, parallel, Exec::parallel)->Arg(2000);

BENCHMARK_MAIN();
