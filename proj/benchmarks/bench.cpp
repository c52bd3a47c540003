#include <benchmark/benchmark.h>

#include "lam/analysis.hpp"
#include "lam/lambda.hpp"
#include "lam/pratt.hpp"
#include "lam/rangesieve.hpp"

using namespace lam;

namespace {

void BM_carmichael_lambda(benchmark::State& state) {
    const uint64_t n = static_cast<uint64_t>(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(lambda::carmichael_lambda(n));
}
BENCHMARK(BM_carmichael_lambda)->Arg(9973)->Arg(1000003)->Arg(999999999989ULL);

void BM_big_L(benchmark::State& state) {
    const uint64_t n = static_cast<uint64_t>(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(lambda::big_L(n));
}
BENCHMARK(BM_big_L)->Arg(9973)->Arg(3691)->Arg(99999999977ULL);

void BM_build_tree(benchmark::State& state) {
    const uint64_t p = static_cast<uint64_t>(state.range(0));
    for (auto _ : state) {
        pratt::TreeMemo memo; // cold cache per build, the interesting case
        benchmark::DoNotOptimize(pratt::build_tree(p, &memo));
    }
}
BENCHMARK(BM_build_tree)->Arg(3691)->Arg(99991)->Arg(2147483647);

void BM_sieve_L(benchmark::State& state) {
    const uint64_t N = static_cast<uint64_t>(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(rangesieve::sieve_L(N));
    state.SetItemsProcessed(static_cast<int64_t>(state.iterations()) *
                            static_cast<int64_t>(N));
}
BENCHMARK(BM_sieve_L)->Arg(100000)->Arg(1000000)->Unit(benchmark::kMillisecond);

void BM_sieve_heights(benchmark::State& state) {
    const uint64_t N = static_cast<uint64_t>(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(rangesieve::sieve_heights(N));
    state.SetItemsProcessed(static_cast<int64_t>(state.iterations()) *
                            static_cast<int64_t>(N));
}
BENCHMARK(BM_sieve_heights)->Arg(100000)->Arg(1000000)->Unit(benchmark::kMillisecond);

void BM_dickman_rho(benchmark::State& state) {
    double u = 1.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(analysis::dickman_rho(u));
        u += 1e-3;
        if (u > 19.0) u = 1.0;
    }
}
BENCHMARK(BM_dickman_rho);

void BM_smooth_count(benchmark::State& state) {
    const uint64_t x = static_cast<uint64_t>(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(analysis::smooth_count(x, 100));
    state.SetItemsProcessed(static_cast<int64_t>(state.iterations()) *
                            static_cast<int64_t>(x));
}
BENCHMARK(BM_smooth_count)->Arg(100000)->Arg(1000000)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
