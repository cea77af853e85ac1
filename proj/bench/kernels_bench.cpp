// Serial reference vs OpenMP path for each data-parallel kernel.
//   ./kernels_bench --benchmark_filter=Moments

#include <benchmark/benchmark.h>

#include <vector>

#include "revbound/bounds.hpp"
#include "revbound/dsl.hpp"
#include "revbound/kernels.hpp"
#include "revbound/moments.hpp"
#include "revbound/revenue.hpp"
#include "revbound/suite.hpp"

using namespace revbound;

namespace {

const DistributionPtr& heavy_mixture() {
  static const DistributionPtr d =
      parse_distribution("mix(0.3*pareto(alpha=1.5, scale=1), 0.5*lognormal(mu=1, sigma=2), 0.2*uniform(a=0.5, b=4))");
  return d;
}

Exec exec_of(const benchmark::State& state) { return state.range(0) ? Exec::parallel : Exec::serial; }

void label(benchmark::State& state) { state.SetLabel(state.range(0) ? "parallel" : "serial"); }

void BM_ScorePrices(benchmark::State& state) {
  const auto& d = heavy_mixture();
  std::vector<double> prices(1 << 16);
  for (std::size_t i = 0; i < prices.size(); ++i) prices[i] = 0.01 + 1e-3 * static_cast<double>(i);
  for (auto _ : state) benchmark::DoNotOptimize(score_prices(*d, prices, exec_of(state)));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(prices.size()));
  label(state);
}

void BM_Quantiles(benchmark::State& state) {
  const auto& d = heavy_mixture();
  std::vector<double> levels(1 << 14);
  for (std::size_t i = 0; i < levels.size(); ++i) levels[i] = (static_cast<double>(i) + 0.5) / levels.size();
  for (auto _ : state) benchmark::DoNotOptimize(kernels::quantiles(*d, levels, exec_of(state)));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(levels.size()));
  label(state);
}

void BM_RandomPriceRevenue(benchmark::State& state) {
  const auto& d = heavy_mixture();
  for (auto _ : state) benchmark::DoNotOptimize(random_price_revenue(*d, 1 << 18, 1, exec_of(state)));
  state.SetItemsProcessed(state.iterations() * (1 << 18));
  label(state);
}

void BM_OptimalRevenue(benchmark::State& state) {
  const auto& d = heavy_mixture();
  RevenueOptions options;
  options.exec = exec_of(state);
  for (auto _ : state) benchmark::DoNotOptimize(optimal_revenue(*d, options));
  label(state);
}

void BM_Moments(benchmark::State& state) {
  const auto& d = heavy_mixture();
  for (auto _ : state) benchmark::DoNotOptimize(log_expectation_estimate(*d, 1e-8, exec_of(state)));
  label(state);
}

void BM_Suite(benchmark::State& state) {
  SuiteOptions options;
  options.count = 16;
  options.exec = exec_of(state);
  for (auto _ : state) benchmark::DoNotOptimize(run_suite(options));
  label(state);
}

}  // namespace

BENCHMARK(BM_ScorePrices)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Quantiles)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_RandomPriceRevenue)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_OptimalRevenue)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Moments)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Suite)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
