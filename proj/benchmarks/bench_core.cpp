// Microbenchmarks for the hot paths: eigendecomposition, both divergences,
// mutual information and exchange information. Sizes 4 and 16 bracket the
// compound dimensions the optimizer touches for qubit and two-qubit inputs.
#include <benchmark/benchmark.h>

#include "entcap/entcap.hpp"

namespace {

using namespace entcap;

DensityOperator fixed_density(Index dim, Index rank, std::uint64_t seed) {
  SeededRng rng(seed);
  return random_density(dim, rank, rng);
}

void bm_herm_eig(benchmark::State& state) {
  const Index dim = state.range(0);
  SeededRng rng(17);
  const Matrix h = random_hermitian(dim, rng);
  for (auto _ : state) benchmark::DoNotOptimize(herm_eig(h));
}
BENCHMARK(bm_herm_eig)->Arg(4)->Arg(16)->Arg(64);

void bm_rel_entropy_a(benchmark::State& state) {
  const Index dim = state.range(0);
  const DensityOperator w = fixed_density(dim, dim, 21);
  const DensityOperator phi = fixed_density(dim, dim, 22);
  for (auto _ : state) benchmark::DoNotOptimize(rel_entropy_a(w, phi));
}
BENCHMARK(bm_rel_entropy_a)->Arg(4)->Arg(16);

void bm_rel_entropy_b(benchmark::State& state) {
  const Index dim = state.range(0);
  const DensityOperator w = fixed_density(dim, dim, 23);
  const DensityOperator phi = fixed_density(dim, dim, 24);
  for (auto _ : state) benchmark::DoNotOptimize(rel_entropy_b(w, phi));
}
BENCHMARK(bm_rel_entropy_b)->Arg(4)->Arg(16);

void bm_mutual_info(benchmark::State& state) {
  const Index da = state.range(0);
  SeededRng rng(25);
  const CompoundState w = random_compound(da, da, da * da, rng);
  for (auto _ : state) benchmark::DoNotOptimize(mutual_info(w, EntropyType::a_type));
}
BENCHMARK(bm_mutual_info)->Arg(2)->Arg(4);

void bm_standard_compound(benchmark::State& state) {
  const Index dim = state.range(0);
  const DensityOperator s = fixed_density(dim, dim, 27);
  for (auto _ : state) benchmark::DoNotOptimize(standard_compound(s));
}
BENCHMARK(bm_standard_compound)->Arg(2)->Arg(4);

void bm_exchange_info(benchmark::State& state) {
  const QuantumChannel c = preset("amplitude_damping", {0.3});
  const DensityOperator s = fixed_density(2, 2, 29);
  for (auto _ : state)
    benchmark::DoNotOptimize(exchange_info(s, c, EntropyType::a_type));
}
BENCHMARK(bm_exchange_info);

void bm_capacity_qubit(benchmark::State& state) {
  const QuantumChannel c = preset("amplitude_damping", {0.3});
  OptimizerConfig cfg;
  cfg.restarts = 1;
  cfg.max_iters = 200;
  cfg.seed = 31;
  for (auto _ : state)
    benchmark::DoNotOptimize(capacity(c, EntropyType::a_type, cfg));
}
BENCHMARK(bm_capacity_qubit)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
