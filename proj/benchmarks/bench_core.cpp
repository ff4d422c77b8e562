#include <benchmark/benchmark.h>

#include <memory>
#include <vector>

#include "zdl/arithmetic.hpp"
#include "zdl/diagnostics.hpp"
#include "zdl/dirichlet.hpp"
#include "zdl/double_array.hpp"
#include "zdl/zero_finder.hpp"

namespace {

std::shared_ptr<const zdl::ArithmeticTable> shared_table(std::uint32_t n) {
  static std::shared_ptr<const zdl::ArithmeticTable> table;
  if (!table || table->n_max() < n) table = std::make_shared<const zdl::ArithmeticTable>(zdl::build_table(n));
  return table;
}

void BM_Sieve(benchmark::State& state) {
  const auto n = static_cast<std::uint32_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(zdl::build_table(n));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Sieve)->Arg(100000)->Arg(1000000)->Unit(benchmark::kMillisecond);

void BM_BetaByDefinition(benchmark::State& state) {
  const auto table = shared_table(100000);
  for (auto _ : state) {
    int mismatches = 0;
    for (std::uint32_t n = 1; n <= 100000; ++n) mismatches += table->beta_by_definition(n) != zdl::beta_closed_form(n);
    benchmark::DoNotOptimize(mismatches);
  }
}
BENCHMARK(BM_BetaByDefinition)->Unit(benchmark::kMillisecond);

void BM_Eta(benchmark::State& state) {
  const zdl::ComplexPoint s{0.5, static_cast<double>(state.range(0))};
  for (auto _ : state) benchmark::DoNotOptimize(zdl::eta(s));
}
BENCHMARK(BM_Eta)->Arg(14)->Arg(50)->Arg(200);

void BM_LambdaSeries(benchmark::State& state) {
  const auto table = shared_table(1000000);
  for (auto _ : state)
    benchmark::DoNotOptimize(zdl::lambda_series_partial({2.0, 0.0}, static_cast<std::uint32_t>(state.range(0)), *table));
}
BENCHMARK(BM_LambdaSeries)->Arg(1000000)->Unit(benchmark::kMillisecond);

void BM_Grid(benchmark::State& state) {
  const auto n = static_cast<std::uint32_t>(state.range(0));
  const auto spec = zdl::DoubleArraySpec::lee({0.5, 14.134725141734693}, shared_table(n));
  for (auto _ : state) benchmark::DoNotOptimize(zdl::PartialSumGrid(spec, n, n));
}
BENCHMARK(BM_Grid)->Arg(1024)->Arg(4096)->Unit(benchmark::kMillisecond);

void BM_CompareModesLee(benchmark::State& state) {
  const auto n = static_cast<std::uint64_t>(state.range(0));
  const auto spec = zdl::DoubleArraySpec::lee({2.0, 0.0}, shared_table(static_cast<std::uint32_t>(n)));
  for (auto _ : state) benchmark::DoNotOptimize(zdl::compare_modes(spec, n, n));
}
BENCHMARK(BM_CompareModesLee)->Arg(100000)->Arg(1000000)->Unit(benchmark::kMillisecond);

void BM_NeededScan(benchmark::State& state) {
  const auto spec = zdl::DoubleArraySpec::lee({0.5, 14.134725141734693}, shared_table(1000000));
  const std::vector<std::uint64_t> Ms{static_cast<std::uint64_t>(state.range(0))};
  for (auto _ : state) benchmark::DoNotOptimize(zdl::needed_uniformity_scan(spec, Ms, 256, 1000000));
}
BENCHMARK(BM_NeededScan)->Arg(16)->Arg(4096)->Unit(benchmark::kMillisecond);

void BM_ZeroScan(benchmark::State& state) {
  for (auto _ : state) {
    for (const auto& b : zdl::scan_critical_line(10.0, 25.0, 0.01)) benchmark::DoNotOptimize(zdl::refine(b));
  }
}
BENCHMARK(BM_ZeroScan)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
