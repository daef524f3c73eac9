#include <benchmark/benchmark.h>

#include "resonance/jost.hpp"
#include "resonance/pipeline.hpp"
#include "resonance/zeros.hpp"

using namespace resonance;

namespace {

PiecewisePotential pieces(int m) {
    std::vector<double> x, q;
    for (int j = 0; j <= m; ++j) x.push_back(static_cast<double>(j) / m);
    for (int j = 0; j < m; ++j) q.push_back(j % 2 ? -7.0 : 11.0);
    return PiecewisePotential(x, q);
}

void BM_evaluate(benchmark::State& state) {
    const auto p = pieces(static_cast<int>(state.range(0)));
    const complex k{3.7, -1.2};
    for (auto _ : state) benchmark::DoNotOptimize(evaluate(p, k));
}
BENCHMARK(BM_evaluate)->Arg(1)->Arg(5)->Arg(50);

void BM_count_zeros(benchmark::State& state) {
    const auto f = jost_function(pieces(3));
    const Rectangle r{-20.0, 20.0, -8.0, 2.0};
    for (auto _ : state) benchmark::DoNotOptimize(count_zeros(f, r));
}
BENCHMARK(BM_count_zeros)->Unit(benchmark::kMillisecond);

void BM_locate_zeros(benchmark::State& state) {
    const auto f = jost_function(PiecewisePotential::constant(20.0, 0.0, 1.0));
    ZeroFinderOptions opts;
    opts.jobs = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(locate_zeros(f, auto_window(PiecewisePotential::constant(20.0, 0.0, 1.0)), opts));
}
BENCHMARK(BM_locate_zeros)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
