#include "crossprod/fixtures.hpp"

#include <benchmark/benchmark.h>

using namespace crossprod;

namespace {

Rep conjugated_sum(int copies, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  Rep sum = fixtures::eta_symmetric_rep();
  for (int i = 1; i < copies; ++i) sum = direct_sum(sum, fixtures::eta_symmetric_rep());
  return compress(sum, random_unitary(rng, sum.dim()));
}

void BM_Intertwiners(benchmark::State& state) {
  const Rep pi = conjugated_sum(static_cast<int>(state.range(0)), 1);
  for (auto _ : state) benchmark::DoNotOptimize(intertwiners(pi, pi));
  state.SetLabel("dim " + std::to_string(pi.dim()));
}
BENCHMARK(BM_Intertwiners)->DenseRange(1, 4);

void BM_Decompose(benchmark::State& state) {
  const Rep pi = conjugated_sum(static_cast<int>(state.range(0)), 2);
  for (auto _ : state) benchmark::DoNotOptimize(decompose(pi, 42));
  state.SetLabel("dim " + std::to_string(pi.dim()));
}
BENCHMARK(BM_Decompose)->DenseRange(1, 4);

void BM_CharacterTable(benchmark::State& state) {
  const FiniteGroup g = make_cyclic_group(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(character_table(g, 42));
}
BENCHMARK(BM_CharacterTable)->Arg(2)->Arg(4)->Arg(8);

void BM_CharacterTableS3(benchmark::State& state) {
  const FiniteGroup g = make_symmetric_group_3();
  for (auto _ : state) benchmark::DoNotOptimize(character_table(g, 42));
}
BENCHMARK(BM_CharacterTableS3);

void BM_UnitaryEigenspaces(benchmark::State& state) {
  std::mt19937_64 rng(3);
  const CMatrix u = random_unitary(rng, state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(unitary_eigenspaces(u, Tolerance{}));
}
BENCHMARK(BM_UnitaryEigenspaces)->RangeMultiplier(2)->Range(4, 64);

}  // namespace

BENCHMARK_MAIN();
