#include <random>

#include <benchmark/benchmark.h>

#include "nrange/numrange.hpp"

namespace {

nrange::CMatrix ginibre(std::size_t n) {
    std::mt19937_64 g(n);
    std::normal_distribution<double> nd(0.0, 0.7071067811865476);
    nrange::CMatrix a(n);
    for (auto& z : a.data()) z = {nd(g), nd(g)};
    return a;
}

void BM_SampleSerial(benchmark::State& state) {
    const auto a = ginibre(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(nrange::sample_boundary_serial(a, nrange::kDefaultAngles));
}

void BM_SampleParallel(benchmark::State& state) {
    const auto a = ginibre(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(nrange::sample_boundary(a, nrange::kDefaultAngles));
}

void BM_BuildReport(benchmark::State& state) {
    const auto a = ginibre(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(nrange::build_report(a));
}

}  // namespace

BENCHMARK(BM_SampleSerial)->Arg(2)->Arg(8)->Arg(16)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SampleParallel)->Arg(2)->Arg(8)->Arg(16)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_BuildReport)->Arg(8)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
