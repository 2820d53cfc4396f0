#include <benchmark/benchmark.h>

#include "hardy/coupling.hpp"
#include "hardy/kernels.hpp"
#include "hardy/specfun.hpp"

using namespace hardy;

static void BM_ExponentP(benchmark::State& st) {
    const double alpha = st.range(0) / 10.0;
    double lambda = 0.1;
    for (auto _ : st) {
        benchmark::DoNotOptimize(exponent_p(alpha, lambda));
        lambda = lambda < 5.0 ? lambda * 1.01 : 0.1;
    }
}
BENCHMARK(BM_ExponentP)->Arg(5)->Arg(15)->Arg(20);

static void BM_CouplingC(benchmark::State& st) {
    double p = 0.3;
    for (auto _ : st) {
        benchmark::DoNotOptimize(coupling_C(1.5, p));
        p = p < 1.4 ? p + 1e-3 : 0.3;
    }
}
BENCHMARK(BM_CouplingC);

static void BM_GammaIntegral(benchmark::State& st) {
    for (auto _ : st) benchmark::DoNotOptimize(gamma_integral(1.5, 0.8));
}
BENCHMARK(BM_GammaIntegral)->Unit(benchmark::kMicrosecond);

static void BM_BesselIScaled(benchmark::State& st) {
    double z = 1e-3;
    for (auto _ : st) {
        benchmark::DoNotOptimize(bessel_i_scaled(1.3, z));
        z = z < 1e3 ? z * 1.1 : 1e-3;
    }
}
BENCHMARK(BM_BesselIScaled);

static void BM_HeatExactHalfline(benchmark::State& st) {
    double r = 0.01;
    for (auto _ : st) {
        benchmark::DoNotOptimize(heat_exact_halfline(1.0, 0.5, r, 1.0));
        r = r < 10.0 ? r * 1.05 : 0.01;
    }
}
BENCHMARK(BM_HeatExactHalfline);

static void BM_RieszEnvelope(benchmark::State& st) {
    const CouplingParams cp = make_params(1, 1.5, 0.5);
    const HalfSpacePoint y = point1(1.0);
    double x = 0.01;
    for (auto _ : st) {
        benchmark::DoNotOptimize(riesz_envelope(cp, 0.5, point1(x), y));
        x = x < 10.0 ? x * 1.05 : 0.01;
    }
}
BENCHMARK(BM_RieszEnvelope);

static void BM_MasterTimeIntegral(benchmark::State& st) {
    for (auto _ : st) benchmark::DoNotOptimize(master_time_integral(2.0, 1, 1.0, 0.4, 4.0, 1.0, 0.25));
}
BENCHMARK(BM_MasterTimeIntegral)->Unit(benchmark::kMicrosecond);
