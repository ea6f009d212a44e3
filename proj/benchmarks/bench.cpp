#include <benchmark/benchmark.h>

#include "bullwhip/arma.hpp"
#include "bullwhip/measure.hpp"
#include "bullwhip/simulate.hpp"

namespace bw = bullwhip;

namespace {

const bw::ArmaModel kMixed{0.0, {0.95}, {0.4}, 1.0};

void BM_PsiWeights(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(bw::psi_weights(kMixed));
  }
}
BENCHMARK(BM_PsiWeights);

void BM_BullwhipGeneral(benchmark::State& state) {
  const auto psi = bw::psi_weights(kMixed);
  for (auto _ : state) {
    benchmark::DoNotOptimize(bw::bullwhip_general(psi, 5));
  }
}
BENCHMARK(BM_BullwhipGeneral);

void BM_GenerateDemand(benchmark::State& state) {
  const auto periods = state.range(0);
  for (auto _ : state) {
    bw::RngStream stream(42, 0);
    benchmark::DoNotOptimize(bw::generate_demand(kMixed, periods, stream));
  }
  state.SetItemsProcessed(state.iterations() * periods);
}
BENCHMARK(BM_GenerateDemand)->Arg(10000)->Arg(100000);

void BM_RunOutPolicy(benchmark::State& state) {
  const auto periods = state.range(0);
  bw::SimulationConfig cfg;
  cfg.model = kMixed;
  cfg.lead_time = 2;
  bw::RngStream stream(42, 0);
  const auto path = bw::generate_demand(kMixed, periods, stream);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        bw::run_out_policy(cfg, path.demand, path.innovations));
  }
  state.SetItemsProcessed(state.iterations() * periods);
}
BENCHMARK(BM_RunOutPolicy)->Arg(10000)->Arg(100000)->Unit(benchmark::kMillisecond);

void BM_EstimateBullwhip(benchmark::State& state) {
  bw::SimulationConfig cfg;
  cfg.model = kMixed;
  cfg.lead_time = 2;
  cfg.periods = 10000;
  cfg.replications = 4;
  for (auto _ : state) {
    benchmark::DoNotOptimize(bw::estimate_bullwhip(cfg));
  }
}
BENCHMARK(BM_EstimateBullwhip)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
