#include <benchmark/benchmark.h>

#include "traintrack/automaton.hpp"
#include "traintrack/folds.hpp"
#include "traintrack/golden.hpp"
#include "traintrack/io.hpp"
#include "traintrack/search.hpp"
#include "traintrack/spectral.hpp"
#include "traintrack/whitehead.hpp"

using namespace traintrack;

static void BM_Certify(benchmark::State& state) {
  const auto g = golden_map();
  for (auto _ : state) benchmark::DoNotOptimize(is_principal(g));
}
BENCHMARK(BM_Certify)->Unit(benchmark::kMicrosecond);

static void BM_CharPolyOfPower(benchmark::State& state) {
  const auto m = transition_matrix(power(golden_map(), static_cast<int>(state.range(0))));
  for (auto _ : state) benchmark::DoNotOptimize(char_poly(m));
}
BENCHMARK(BM_CharPolyOfPower)->Arg(1)->Arg(8)->Arg(32);

static void BM_PnpSearch(benchmark::State& state) {
  const auto g = golden_map();
  PnpOptions opts;
  opts.max_length = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(pnp_bounded_search(g, opts));
}
BENCHMARK(BM_PnpSearch)->Arg(10)->Arg(50)->Unit(benchmark::kMicrosecond);

static void BM_Decompose(benchmark::State& state) {
  const auto h = power(golden_map(), static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(stallings_decompose(h));
}
BENCHMARK(BM_Decompose)->DenseRange(1, 4)->Unit(benchmark::kMicrosecond);

static void BM_ParseMap(benchmark::State& state) {
  const std::string text = print_map_document(golden_map());
  for (auto _ : state) benchmark::DoNotOptimize(parse_map_document(text));
}
BENCHMARK(BM_ParseMap);

static void BM_BuildAutomaton(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(build_automaton(3));
}
BENCHMARK(BM_BuildAutomaton)->Unit(benchmark::kMillisecond);

static void BM_SingleFoldSearch(benchmark::State& state) {
  SearchOptions opts;
  opts.jobs = 1;
  for (auto _ : state) benchmark::DoNotOptimize(single_fold_search(static_cast<int>(state.range(0)), opts));
}
BENCHMARK(BM_SingleFoldSearch)->DenseRange(3, 5)->Unit(benchmark::kMillisecond);

static void BM_TransportCheck(benchmark::State& state) {
  const auto a = build_automaton(3);
  for (auto _ : state) benchmark::DoNotOptimize(check_transport(a, static_cast<int>(state.range(0))));
}
BENCHMARK(BM_TransportCheck)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
