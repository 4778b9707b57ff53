#include <benchmark/benchmark.h>

#include "pamlyap/montecarlo.hpp"

namespace {

void bm_philox_normals(benchmark::State& state) {
    pam::CounterRng rng(1);
    std::uint64_t i = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(rng.normal(0, 0, i++));
    }
}
BENCHMARK(bm_philox_normals);

void bm_replica_step_rate(benchmark::State& state) {
    pam::ModelParams params(1.0, 1.0, 1.0);
    pam::SimConfig cfg;
    std::uint64_t r = 0;
    for (auto _ : state) {
        auto snap = pam::simulate_replica(params, 1.0, cfg, r++);
        benchmark::DoNotOptimize(snap.values.data());
    }
    state.SetItemsProcessed(state.iterations() * 100 *
                            (2 * pam::default_window_halfwidth(params, 1.0, 0) + 1));
}
BENCHMARK(bm_replica_step_rate)->Unit(benchmark::kMicrosecond);

void bm_pinned_walk(benchmark::State& state) {
    pam::ModelParams params(1.0, 1.0, 1.0);
    pam::SimConfig cfg;
    cfg.replicas = 1000;
    for (auto _ : state) {
        auto est = pam::pinned_walk_second_moment(params, 1.0, 0, cfg);
        benchmark::DoNotOptimize(est.moment.mean);
    }
}
BENCHMARK(bm_pinned_walk)->Unit(benchmark::kMillisecond);

}  // namespace
