#include <benchmark/benchmark.h>

#include "lerw/enumeration.hpp"
#include "lerw/harmonic.hpp"
#include "lerw/identity.hpp"
#include "lerw/sampling.hpp"
#include "lerw/slit.hpp"

using namespace lerw;

static void BM_SquareFactorisation(benchmark::State& state) {
  const LatticeDomain A = square_domain(static_cast<int>(state.range(0)));
  const EdgeSignTable signs = build_branch_cut(A);
  for (auto _ : state) benchmark::DoNotOptimize(GreenTable(A, &signs).log_det());
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_SquareFactorisation)->RangeMultiplier(2)->Range(8, 64)->Unit(benchmark::kMillisecond);

static void BM_IdentityEvaluator(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const LatticeDomain A = square_domain(n);
  const BoundaryEdge a = named_square_edge(n, "right-mid");
  const BoundaryEdge b = named_square_edge(n, "left-mid");
  for (auto _ : state) benchmark::DoNotOptimize(IdentityEvaluator(A).probability(a, b));
}
BENCHMARK(BM_IdentityEvaluator)->Arg(8)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);

static void BM_SawSums(benchmark::State& state) {
  std::vector<Point> pts;
  for (int x = -1; x <= 3; ++x) {
    for (int y = -2; y < -2 + state.range(0); ++y) pts.push_back({x, y});
  }
  const LatticeDomain A = LatticeDomain::validate(pts);
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_saw_sums(A, true).forward.data());
}
BENCHMARK(BM_SawSums)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);

static void BM_ConditionedWalks(benchmark::State& state) {
  const LatticeDomain A = square_domain(8);
  const BoundaryEdge a = named_square_edge(8, "right-mid");
  const BoundaryEdge b = named_square_edge(8, "left-mid");
  for (auto _ : state) benchmark::DoNotOptimize(mc_edge_probability(A, a, b, 10000, 1, 1).mean);
  state.SetItemsProcessed(state.iterations() * 10000);
}
BENCHMARK(BM_ConditionedWalks)->Unit(benchmark::kMillisecond);

static void BM_SlitProfile(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(slit_escape_profile(static_cast<int>(state.range(0))).total);
}
BENCHMARK(BM_SlitProfile)->Arg(32)->Arg(128)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
