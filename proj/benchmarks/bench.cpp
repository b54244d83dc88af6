#include <benchmark/benchmark.h>

#include "brent/bundled.hpp"
#include "brent/encoder.hpp"
#include "brent/search.hpp"
#include "brent/sls.hpp"

namespace {

using namespace brent;

void BM_Verify(benchmark::State& state) {
  const Scheme s = fig1_scheme_a();
  for (auto _ : state) benchmark::DoNotOptimize(verify(s));
}
BENCHMARK(BM_Verify);

void BM_CanonicalKey(benchmark::State& state) {
  const Scheme s = fig1_scheme_a();
  for (auto _ : state) benchmark::DoNotOptimize(canonical_key(s));
}
BENCHMARK(BM_CanonicalKey);

void BM_Encode(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const int m = static_cast<int>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(encode(n, m));
}
BENCHMARK(BM_Encode)->Args({2, 7})->Args({3, 23})->Unit(benchmark::kMillisecond);

// Committed flips per second on encode(2, 7) from scratch.
void BM_SolveRank7(benchmark::State& state) {
  const CnfFormula f = encode(2, 7);
  std::uint64_t seed = 1;
  std::uint64_t flips = 0;
  for (auto _ : state) {
    SolverConfig cfg;
    cfg.seed = seed++;
    cfg.dependency_aware = state.range(0) != 0;
    cfg.max_flips = 200'000;
    cfg.tries = 1;
    flips += solve(f, cfg).flips;
  }
  state.counters["flips/s"] = benchmark::Counter(static_cast<double>(flips), benchmark::Counter::kIsRate);
}
BENCHMARK(BM_SolveRank7)->Arg(1)->Arg(0)->Unit(benchmark::kMillisecond)->Iterations(5);

void BM_NeighborStep(benchmark::State& state) {
  const CnfFormula plain = encode(3, 23);
  const Scheme a = fig1_scheme_a();
  SolverConfig cfg;
  cfg.max_flips = 200'000;
  cfg.tries = 1;
  std::uint64_t seed = 1;
  for (auto _ : state) benchmark::DoNotOptimize(neighbor(plain, a, 2.0 / 3.0, cfg, seed++));
}
BENCHMARK(BM_NeighborStep)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
