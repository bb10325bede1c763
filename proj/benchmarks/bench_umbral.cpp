#include <benchmark/benchmark.h>

#include "umbral/auxiliary_ops.hpp"
#include "umbral/combinatorics.hpp"
#include "umbral/identity_suite.hpp"
#include "umbral/inversion.hpp"
#include "umbral/parser.hpp"
#include "umbral/poisson_lab.hpp"
#include "umbral/rng.hpp"

namespace {

using namespace umbral;

Series random_delta(int order, std::uint64_t seed) {
  SplitMix64 rng(seed);
  std::vector<Poly> c{Poly(0), Poly(small_nonzero_rational(rng))};
  for (int k = 2; k <= order; ++k) c.emplace_back(small_rational(rng));
  return Series::make(c, order);
}

void BM_SeriesCompose(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Series g = exp(random_delta(n, 1));
  const Series h = random_delta(n, 2);
  for (auto _ : state) benchmark::DoNotOptimize(compose(g, h));
}
BENCHMARK(BM_SeriesCompose)->Arg(8)->Arg(12)->Arg(20);

void BM_SeriesRevert(benchmark::State& state) {
  const Series h = random_delta(static_cast<int>(state.range(0)), 3);
  for (auto _ : state) benchmark::DoNotOptimize(revert(h));
}
BENCHMARK(BM_SeriesRevert)->Arg(8)->Arg(12)->Arg(20);

void BM_PartialBellTable(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  std::vector<Poly> a;
  for (int i = 1; i <= n; ++i) a.push_back(Poly::variable("a" + std::to_string(i)));
  for (auto _ : state) benchmark::DoNotOptimize(combinatorics::partial_bell_table(n, a));
}
BENCHMARK(BM_PartialBellTable)->Arg(6)->Arg(10)->Arg(12);

void BM_RevertUmbral(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  SplitMix64 rng(4);
  std::vector<Poly> m{Poly(1), Poly(1)};
  for (int k = 2; k <= n; ++k) m.emplace_back(small_rational(rng));
  for (auto _ : state) {
    Workspace ws(n);
    const AtomId a = ws.define_umbra("a", m);
    benchmark::DoNotOptimize(revert_umbral(ws, a));
  }
}
BENCHMARK(BM_RevertUmbral)->Arg(8)->Arg(12);

void BM_ParseAndEval(benchmark::State& state) {
  for (auto _ : state) {
    Workspace ws(8, {"x"});
    const Expr e = parse_expr(ws, "E[(x.bell + u + bell')^6]");
    benchmark::DoNotOptimize(ws.eval(e, 1));
  }
}
BENCHMARK(BM_ParseAndEval);

void BM_CheckAll(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(check_all(std::nullopt, 1));
}
BENCHMARK(BM_CheckAll)->Unit(benchmark::kMillisecond);

void BM_PoissonSample(benchmark::State& state) {
  const auto model = lab::Model::compound(2, lab::DiscreteDist::parse("1:1/2,2:1/2"));
  const auto n = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(lab::sample(model, n, 7, 1));
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * n));
}
BENCHMARK(BM_PoissonSample)->Arg(1 << 16)->Arg(1 << 20)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
