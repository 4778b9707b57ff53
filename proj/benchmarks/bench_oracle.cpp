#include <benchmark/benchmark.h>

#include "pamlyap/oracle.hpp"

namespace {

void bm_ode_k2(benchmark::State& state) {
    pam::ModelParams params(1.0, 1.0, 1.0);
    const double t = static_cast<double>(state.range(0)) / 2.0;
    for (auto _ : state) {
        auto field = pam::ode_moment_field(params, 2, t, 3);
        benchmark::DoNotOptimize(field.raw().data());
    }
}
BENCHMARK(bm_ode_k2)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);

void bm_ode_onesided_k3(benchmark::State& state) {
    pam::ModelParams params(2.0, 0.0, 1.0);
    for (auto _ : state) {
        auto field = pam::ode_moment_field(params, 3, 0.5, 2);
        benchmark::DoNotOptimize(field.raw().data());
    }
}
BENCHMARK(bm_ode_onesided_k3)->Unit(benchmark::kMillisecond);

}  // namespace
