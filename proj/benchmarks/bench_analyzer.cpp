#include "crossprod/fixtures.hpp"

#include <benchmark/benchmark.h>

using namespace crossprod;

namespace {

void BM_BuildCrossedModel(benchmark::State& state) {
  const GroupActionPtr act = fixtures::rotation_action(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(build_crossed_model(act));
}
BENCHMARK(BM_BuildCrossedModel)->Arg(2)->Arg(3)->Arg(5);

void BM_AnalyzeRegular(benchmark::State& state) {
  const CovariantRep pi = fixtures::torus_regular();
  for (auto _ : state) benchmark::DoNotOptimize(analyze(pi, 42));
}
BENCHMARK(BM_AnalyzeRegular);

void BM_AnalyzeWeyl(benchmark::State& state) {
  const CovariantRep pi = fixtures::weyl_covariant(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(analyze(pi, 42));
}
BENCHMARK(BM_AnalyzeWeyl)->Arg(2)->Arg(3);

void BM_CyclicAnalyze(benchmark::State& state) {
  std::mt19937_64 rng(5);
  const fixtures::CyclicInput in = fixtures::random_cyclic_input(static_cast<int>(state.range(0)), rng, Tolerance{});
  const CovariantRep pi = build_cyclic_irrep(in.pi1, in.V, in.m, in.k, in.action);
  for (auto _ : state) benchmark::DoNotOptimize(cyclic_analyze(pi, 42));
  state.SetLabel("dim " + std::to_string(pi.dim()));
}
BENCHMARK(BM_CyclicAnalyze)->DenseRange(2, 6, 2);

void BM_ClassifyS3(benchmark::State& state) {
  const CovariantRep pi = fixtures::doubled_minimal_covariant();
  for (auto _ : state) benchmark::DoNotOptimize(classify_s3(pi, 42));
}
BENCHMARK(BM_ClassifyS3);

void BM_RegularCriterion(benchmark::State& state) {
  const auto act = fixtures::free_group_action();
  const Rep pi = fixtures::eta_symmetric_rep();
  for (auto _ : state) benchmark::DoNotOptimize(regular_irreducibility_criterion(pi, *act));
}
BENCHMARK(BM_RegularCriterion);

}  // namespace

BENCHMARK_MAIN();
