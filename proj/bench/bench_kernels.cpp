// Serial reference vs OpenMP kernels on the norm reductions.

#include <benchmark/benchmark.h>

#include <cmath>
#include <random>
#include <vector>

#include "scalelab/kernels.hpp"
#include "scalelab/svd.hpp"

using namespace scalelab;

namespace {

std::vector<double> decreasing(std::size_t n) {
  std::vector<double> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = 1.0 / std::pow(static_cast<double>(i + 1), 0.75);
  return v;
}

const kernels::PowerLogWeight kWeight{0.5, 1.0};

void BM_PowerSumSerial(benchmark::State& state) {
  const auto v = decreasing(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(kernels::serial::weighted_power_sum(v, kWeight, 1.5));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_PowerSumParallel(benchmark::State& state) {
  const auto v = decreasing(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(kernels::parallel::weighted_power_sum(v, kWeight, 1.5));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_PrefixSerial(benchmark::State& state) {
  const auto v = decreasing(static_cast<std::size_t>(state.range(0)));
  std::vector<double> out(v.size());
  for (auto _ : state) {
    kernels::serial::weighted_power_prefix(v, kWeight, 2.0, out);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_PrefixParallel(benchmark::State& state) {
  const auto v = decreasing(static_cast<std::size_t>(state.range(0)));
  std::vector<double> out(v.size());
  for (auto _ : state) {
    kernels::parallel::weighted_power_prefix(v, kWeight, 2.0, out);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_WeightSumSerial(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(kernels::serial::weight_sum(kWeight, 1, n));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_WeightSumParallel(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(kernels::parallel::weight_sum(kWeight, 1, n));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_JacobiSvd(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  std::mt19937_64 rng(1);
  std::normal_distribution<double> g;
  Matrix a(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a(i, j) = g(rng);
  for (auto _ : state) benchmark::DoNotOptimize(singular_values(a));
}

}  // namespace

BENCHMARK(BM_PowerSumSerial)->RangeMultiplier(8)->Range(1 << 12, 1 << 24);
BENCHMARK(BM_PowerSumParallel)->RangeMultiplier(8)->Range(1 << 12, 1 << 24);
BENCHMARK(BM_PrefixSerial)->RangeMultiplier(8)->Range(1 << 12, 1 << 24);
BENCHMARK(BM_PrefixParallel)->RangeMultiplier(8)->Range(1 << 12, 1 << 24);
BENCHMARK(BM_WeightSumSerial)->RangeMultiplier(8)->Range(1 << 12, 1 << 24);
BENCHMARK(BM_WeightSumParallel)->RangeMultiplier(8)->Range(1 << 12, 1 << 24);
BENCHMARK(BM_JacobiSvd)->Arg(8)->Arg(16)->Arg(32)->Arg(64);

BENCHMARK_MAIN();
