#include <benchmark/benchmark.h>

#include <cmath>

#include "inhomog/boxdim.hpp"
#include "inhomog/constructions.hpp"
#include "inhomog/orbital.hpp"

using namespace inhomog;

static void BM_mesh_count_sierpinski(benchmark::State& state) {
    const auto sys = sierpinski();
    const double delta = std::exp2(-static_cast<double>(state.range(0)));
    const auto cover = homogeneous_cover(sys.ifs, delta);
    for (auto _ : state)
        benchmark::DoNotOptimize(mesh_count(cover, delta).count);
    state.SetItemsProcessed(state.iterations() *
                            static_cast<std::int64_t>(cover.size()));
}
BENCHMARK(BM_mesh_count_sierpinski)->Arg(6)->Arg(8)->Arg(10);

static void BM_stopping_set(benchmark::State& state) {
    const auto sys = sierpinski();
    const double delta = std::exp2(-static_cast<double>(state.range(0)));
    for (auto _ : state)
        benchmark::DoNotOptimize(stopping_set(sys.ifs, delta).words.size());
}
BENCHMARK(BM_stopping_set)->Arg(6)->Arg(9)->Arg(11);

static void BM_garsia_scan(benchmark::State& state) {
    const double lambda = BernoulliParams::sqrt2().lambda;
    const int n = static_cast<int>(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(bernoulli_min_separation(lambda, n));
}
BENCHMARK(BM_garsia_scan)->Arg(8)->Arg(10)->Arg(12);

static void BM_strip_count(benchmark::State& state) {
    const double lambda = BernoulliParams::sqrt2().lambda;
    const double delta = std::exp2(-static_cast<double>(state.range(0)));
    for (auto _ : state)
        benchmark::DoNotOptimize(bernoulli_strip_count(lambda, delta));
}
BENCHMARK(BM_strip_count)->Arg(8)->Arg(10)->Arg(12);

static void BM_comb_mesh_count(benchmark::State& state) {
    const int m = static_cast<int>(state.range(0));
    const double delta = std::pow(3.0, -m);
    for (auto _ : state)
        benchmark::DoNotOptimize(comb_mesh_count({3}, delta));
}
BENCHMARK(BM_comb_mesh_count)->Arg(5)->Arg(7)->Arg(8);

static void BM_kleinian_orbit(benchmark::State& state) {
    const int m = static_cast<int>(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(kleinian_ce(m, m).points.points.size());
}
BENCHMARK(BM_kleinian_orbit)->Arg(50)->Arg(200);

BENCHMARK_MAIN();
