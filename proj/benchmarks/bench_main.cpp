#include <benchmark/benchmark.h>

#include "crystalforge/suites.hpp"
#include "crystalforge/tropic.hpp"
#include "crystalforge/unicrys.hpp"

using namespace cf;

static void BM_RatFuncProduct(benchmark::State& st) {
  VarNames v{"a", "b", "c"};
  RatFunc f = parseRatFunc("(a+b)^3/(1+c)", v), g = parseRatFunc("(a*c+b)/(a+b+c)", v);
  for (auto _ : st) benchmark::DoNotOptimize(f * g + g / f);
}
BENCHMARK(BM_RatFuncProduct);

static void BM_GaussSymbolic(benchmark::State& st) {
  int n = int(st.range(0));
  MatRF g(n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) g(r, c) = RatFunc::var(n * r + c, n * n);
  for (auto _ : st) benchmark::DoNotOptimize(gauss(g));
}
BENCHMARK(BM_GaussSymbolic)->Arg(2)->Arg(3);

static void BM_InducedW0Cell(benchmark::State& st) {
  auto ctx = GroupCtx::byName(st.range(0) == 3 ? "GL3" : "GL4");
  Word w = WeylElt::longest(ctx->datum()).word();
  for (auto _ : st) benchmark::DoNotOptimize(induced(standardCell(ctx, w)));
}
BENCHMARK(BM_InducedW0Cell)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);

static void BM_VermaSuite(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(vermaChecks("GL3", SuiteOptions{}));
}
BENCHMARK(BM_VermaSuite)->Unit(benchmark::kMillisecond);

static void BM_B2Verma(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(vermaChecks("C2folded", SuiteOptions{}));
}
BENCHMARK(BM_B2Verma)->Unit(benchmark::kMillisecond);

static void BM_TropCrystal(benchmark::State& st) {
  GeomCrystal X = induced(standardCell(GroupCtx::GL(3), {1, 2, 1}));
  for (auto _ : st) benchmark::DoNotOptimize(tropCrystal(X));
}
BENCHMARK(BM_TropCrystal)->Unit(benchmark::kMillisecond);

static void BM_BoxVerify(benchmark::State& st) {
  CombCrystal C = tropCrystal(induced(standardCell(GroupCtx::GL(3), {1, 2, 1})));
  int B = int(st.range(0));
  for (auto _ : st) benchmark::DoNotOptimize(verifyWCrystalBox(C, B));
  st.SetItemsProcessed(st.iterations() * (2 * B + 1) * (2 * B + 1) * (2 * B + 1));
}
BENCHMARK(BM_BoxVerify)->Arg(2)->Arg(5)->Unit(benchmark::kMillisecond);

static void BM_DemazureS4(benchmark::State& st) {
  auto els = allElements(RootDatum::GL(4));
  for (auto _ : st)
    for (const auto& a : els)
      for (const auto& b : els) benchmark::DoNotOptimize(demazure(a, b));
}
BENCHMARK(BM_DemazureS4)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
