#include <benchmark/benchmark.h>

#include "inctree/asymptotics.hpp"
#include "inctree/generators.hpp"
#include "inctree/series.hpp"
#include "inctree/spectral.hpp"

using namespace inctree;

static void BM_MultiplicityRational(benchmark::State& state) {
  const auto t = gen_recursive(static_cast<std::size_t>(state.range(0)), RngSeed{1, 0});
  const auto spec = EigenvalueSpec::parse("x-1");
  for (auto _ : state) benchmark::DoNotOptimize(multiplicity(t, MatrixKind::Adjacency, spec));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_MultiplicityRational)->RangeMultiplier(4)->Range(64, 65536)->Complexity();

static void BM_MultiplicityQuadratic(benchmark::State& state) {
  const auto t = gen_recursive(static_cast<std::size_t>(state.range(0)), RngSeed{1, 0});
  const auto spec = EigenvalueSpec::parse("x^2-x-1");
  for (auto _ : state) benchmark::DoNotOptimize(multiplicity(t, MatrixKind::Adjacency, spec));
}
BENCHMARK(BM_MultiplicityQuadratic)->RangeMultiplier(4)->Range(64, 16384);

static void BM_MultiplicityZeroFast(benchmark::State& state) {
  const auto t = gen_binary(static_cast<std::size_t>(state.range(0)), RngSeed{2, 0});
  for (auto _ : state) benchmark::DoNotOptimize(multiplicity_zero_fast(t));
}
BENCHMARK(BM_MultiplicityZeroFast)->RangeMultiplier(4)->Range(64, 65536);

static void BM_CharPoly(benchmark::State& state) {
  const auto t = gen_recursive(static_cast<std::size_t>(state.range(0)), RngSeed{3, 0});
  for (auto _ : state) benchmark::DoNotOptimize(char_poly(t, MatrixKind::Laplacian));
}
BENCHMARK(BM_CharPoly)->RangeMultiplier(2)->Range(16, 256)->Unit(benchmark::kMillisecond);

static void BM_Generate(benchmark::State& state) {
  auto rng = make_engine(RngSeed{4, 0});
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(gen_binary(n, rng));
}
BENCHMARK(BM_Generate)->Arg(2000);

static void BM_EnumShapes(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(enum_shapes(FamilyId::Recursive, n).size());
}
BENCHMARK(BM_EnumShapes)->DenseRange(8, 12, 2)->Unit(benchmark::kMillisecond);

static void BM_SeriesSolve(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(series_solve(FamilyId::BinaryIncreasing, n).mean.back());
}
BENCHMARK(BM_SeriesSolve)->Arg(50)->Arg(100)->Unit(benchmark::kMillisecond);

static void BM_ConstantsRec(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(constants_rec().K1_direct.value);
}
BENCHMARK(BM_ConstantsRec)->Unit(benchmark::kMillisecond);

static void BM_ConstantsBin(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(constants_bin().K2.value);
}
BENCHMARK(BM_ConstantsBin)->Unit(benchmark::kMillisecond)->Iterations(3);
BENCHMARK_MAIN();
