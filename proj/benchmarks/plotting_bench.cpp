#include <benchmark/benchmark.h>

#include "plotting/cnf.hpp"
#include "plotting/encoder.hpp"
#include "plotting/engine.hpp"
#include "plotting/generator.hpp"
#include "plotting/oracle.hpp"
#include "plotting/planner.hpp"

using namespace plotting;

namespace {

Instance square(int side, int colours, int goal) {
  return Instance{random_instance({side, side, colours}, 7).init_grid, goal};
}

void BM_ApplyEveryShot(benchmark::State& state) {
  const int side = static_cast<int>(state.range(0));
  const Instance inst = square(side, 3, 0);
  const auto shots = all_shots(side, side);
  for (auto _ : state) {
    for (Colour hand = 1; hand <= 3; ++hand) {
      for (Shot s : shots) benchmark::DoNotOptimize(apply_shot(inst.init_grid, hand, s));
    }
  }
  state.SetItemsProcessed(state.iterations() * 3 * static_cast<std::int64_t>(shots.size()));
}
BENCHMARK(BM_ApplyEveryShot)->Arg(3)->Arg(5)->Arg(9);

void BM_Encode(benchmark::State& state) {
  const int side = static_cast<int>(state.range(0));
  EncodeOptions o;
  o.steps = static_cast<int>(state.range(1));
  o.progress = state.range(2) ? ProgressEncoding::cardinality_compare : ProgressEncoding::consumption_witness;
  const Instance inst = square(side, 3, side * side - o.steps);
  std::size_t clauses = 0;
  for (auto _ : state) {
    const Encoding e = encode(inst, o);
    clauses = e.formula.clause_count();
    benchmark::DoNotOptimize(clauses);
  }
  state.counters["clauses"] = static_cast<double>(clauses);
}
BENCHMARK(BM_Encode)->Args({3, 4, 0})->Args({3, 4, 1})->Args({5, 10, 0})->Args({5, 10, 1})->Unit(benchmark::kMillisecond);

void BM_DpllHorizon(benchmark::State& state) {
  const Instance inst = square(3, 2, 0);
  EncodeOptions o;
  o.steps = static_cast<int>(state.range(0));
  const cnf::CnfFormula f = encode(inst, o).formula;
  for (auto _ : state) benchmark::DoNotOptimize(cnf::dpll_solve(f));
}
BENCHMARK(BM_DpllHorizon)->DenseRange(1, 5)->Unit(benchmark::kMillisecond);

void BM_SolveInternal(benchmark::State& state) {
  const Instance inst = square(3, 2, static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(solve(inst, InternalBackend{}));
}
BENCHMARK(BM_SolveInternal)->Arg(0)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_BfsOptimal(benchmark::State& state) {
  const Instance inst = square(3, 2, static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(bfs_optimal(inst, inst.block_limit() - inst.goal));
}
BENCHMARK(BM_BfsOptimal)->Arg(0)->Arg(4)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
