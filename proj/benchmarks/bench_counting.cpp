#include <benchmark/benchmark.h>

#include "dpcount/chars.hpp"
#include "dpcount/constants.hpp"
#include "dpcount/picard.hpp"
#include "dpcount/segre.hpp"
#include "dpcount/surfaces.hpp"
#include "dpcount/torsor.hpp"

using namespace dpc;

static void BM_CountAmbientP2(benchmark::State& state) {
    for (auto _ : state)
        benchmark::DoNotOptimize(surfaces::count_ambient(3, state.range(0)));
}
BENCHMARK(BM_CountAmbientP2)->Arg(100)->Arg(300);

static void BM_CountSurfaceD4(benchmark::State& state) {
    auto S = surfaces::builtin("dp3_d4");
    for (auto _ : state)
        benchmark::DoNotOptimize(surfaces::count_surface(S, state.range(0), surfaces::Subset::OpenU));
}
BENCHMARK(BM_CountSurfaceD4)->Arg(25)->Arg(50)->Arg(100);

static void BM_A1TorsorCount(benchmark::State& state) {
    for (auto _ : state)
        benchmark::DoNotOptimize(torsor::a1_count(state.range(0)));
}
BENCHMARK(BM_A1TorsorCount)->Arg(1000)->Arg(10000)->Arg(100000);

static void BM_LocalCounts(benchmark::State& state) {
    std::array<std::int64_t, 4> a{1, 1, 1, 1};
    for (auto _ : state)
        benchmark::DoNotOptimize(chars::local_counts(a, state.range(0)));
}
BENCHMARK(BM_LocalCounts)->Arg(31)->Arg(97)->Arg(169);

static void BM_SegreClassify(benchmark::State& state) {
    auto S = surfaces::builtin("dp4_xiii");
    auto A = picard::quadric_matrix(S.forms[0]);
    auto B = picard::quadric_matrix(S.forms[1]);
    for (auto _ : state)
        benchmark::DoNotOptimize(picard::segre_symbol(A, B));
}
BENCHMARK(BM_SegreClassify);

static void BM_PicardRank(benchmark::State& state) {
    for (auto _ : state)
        benchmark::DoNotOptimize(picard::picard_rank({1, 2, 3, 5}));
}
BENCHMARK(BM_PicardRank);

static void BM_DeltaPartialSum(benchmark::State& state) {
    for (auto _ : state)
        benchmark::DoNotOptimize(constants::delta_partial_sum(state.range(0)));
}
BENCHMARK(BM_DeltaPartialSum)->Arg(1000000)->Arg(100000000);

BENCHMARK_MAIN();
