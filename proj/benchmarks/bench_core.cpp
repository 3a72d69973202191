#include <benchmark/benchmark.h>

#include "horoxt/densities.hpp"
#include "horoxt/lattice.hpp"
#include "horoxt/montecarlo.hpp"
#include "horoxt/section.hpp"

namespace {

void BM_hall_psi(benchmark::State& state) {
    double r = 0.0;
    for (auto _ : state) {
        r += 0.37;
        if (r > 50.0) r -= 50.0;
        benchmark::DoNotOptimize(horoxt::hall_psi(r));
    }
}
BENCHMARK(BM_hall_psi);

void BM_hit_process(benchmark::State& state) {
    const double T = double(state.range(0));
    horoxt::SamplerSpec haar;
    haar.seed = 7;
    const horoxt::GroupElement g0 = horoxt::sample_initial(haar, 0);
    horoxt::OrbitSpec orbit;
    orbit.g0 = g0;
    orbit.T = T;
    for (auto _ : state) {
        auto events = horoxt::hit_process(orbit);
        benchmark::DoNotOptimize(events.data());
    }
    state.SetItemsProcessed(state.iterations() * int64_t(T));
}
BENCHMARK(BM_hit_process)->Arg(100)->Arg(1000)->Arg(10000);

void BM_enumerate_disk(benchmark::State& state) {
    const double T = double(state.range(0));
    const horoxt::LatticeBasis M = horoxt::LatticeBasis::from_group(horoxt::GroupElement{});
    const horoxt::Region disk = horoxt::Region::disk(1.0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(horoxt::count_in_dilate(M, disk, T));
    }
}
BENCHMARK(BM_enumerate_disk)->Arg(10)->Arg(100);

void BM_farey(benchmark::State& state) {
    const long Q = state.range(0);
    for (auto _ : state) {
        auto gaps = horoxt::farey_gap_oracle(Q);
        benchmark::DoNotOptimize(gaps.samples.data());
    }
}
BENCHMARK(BM_farey)->Arg(500)->Arg(2000);

void BM_sup_excursion(benchmark::State& state) {
    horoxt::SamplerSpec haar;
    haar.seed = 11;
    const horoxt::GroupElement g0 = horoxt::sample_initial(haar, 0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(horoxt::sup_excursion_height_detail(g0, 1000.0).value);
    }
}
BENCHMARK(BM_sup_excursion);

}

BENCHMARK_MAIN();
