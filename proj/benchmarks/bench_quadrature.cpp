#include <benchmark/benchmark.h>

#include "pamlyap/partition_expansion.hpp"
#include "pamlyap/quadrature.hpp"

namespace {

void bm_first_moment(benchmark::State& state) {
    pam::ModelParams params(1.0, 1.0, 1.0);
    for (auto _ : state) {
        auto r = pam::first_moment_q(params, 1.0, 0);
        benchmark::DoNotOptimize(r.value.log_mag);
    }
}
BENCHMARK(bm_first_moment);

void bm_second_moment(benchmark::State& state) {
    pam::ModelParams params(1.0, 1.0, 1.0);
    const double t = static_cast<double>(state.range(0));
    for (auto _ : state) {
        auto r = pam::second_moment_q(params, t, {0, 0});
        benchmark::DoNotOptimize(r.value.log_mag);
    }
}
BENCHMARK(bm_second_moment)->Arg(1)->Arg(10)->Arg(40)->Unit(benchmark::kMillisecond);

void bm_onesided(benchmark::State& state) {
    const int k = static_cast<int>(state.range(0));
    pam::OrderedTuple n(std::vector<int>(static_cast<std::size_t>(k), 1));
    for (auto _ : state) {
        auto r = pam::onesided_moment_q(1.0, 1.0, n);
        benchmark::DoNotOptimize(r.value.log_mag);
    }
}
BENCHMARK(bm_onesided)->Arg(1)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

void bm_mu_partitions(benchmark::State& state) {
    const int k = static_cast<int>(state.range(0));
    for (auto _ : state) {
        auto r = pam::mu_via_partitions(pam::onesided_weight(1.0, 0.0), k,
                                        pam::partition_contour(0.3, 32));
        benchmark::DoNotOptimize(r.value.log_mag);
    }
}
BENCHMARK(bm_mu_partitions)->Arg(2)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);

}  // namespace
