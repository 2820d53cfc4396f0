#include <benchmark/benchmark.h>

#include "hardy/assembly.hpp"
#include "hardy/spectral.hpp"
#include "hardy/testfunctions.hpp"

using namespace hardy;

static void BM_AssembleForm(benchmark::State& st) {
    const Grid1D grid = build_grid(10.0, static_cast<int>(st.range(0)), 2.0);
    const double alpha = st.range(1) / 10.0;
    for (auto _ : st) benchmark::DoNotOptimize(assemble_form(alpha, 0.5, grid));
}
BENCHMARK(BM_AssembleForm)->Args({250, 15})->Args({500, 15})->Args({500, 20})->Unit(benchmark::kMillisecond);

static void BM_Eigendecompose(benchmark::State& st) {
    const DiscreteOperator op = assemble_form(1.5, 0.5, build_grid(10.0, static_cast<int>(st.range(0)), 2.0));
    for (auto _ : st) benchmark::DoNotOptimize(eigendecompose(op));
}
BENCHMARK(BM_Eigendecompose)->Arg(250)->Arg(500)->Arg(1000)->Unit(benchmark::kMillisecond);

static void BM_SobolevNorm(benchmark::State& st) {
    const Grid1D grid = build_grid(10.0, 500, 2.0);
    const SpectralDecomposition dec = eigendecompose(assemble_form(2.0, 1.0, grid));
    const Eigen::VectorXd u = boundary_bump(grid, 0.01, 1.0).values;
    for (auto _ : st) benchmark::DoNotOptimize(sobolev_norm(dec, 1.3, u));
}
BENCHMARK(BM_SobolevNorm)->Unit(benchmark::kMicrosecond);

static void BM_HardyQuotientMin(benchmark::State& st) {
    const Grid1D grid = build_grid(10.0, static_cast<int>(st.range(0)), 2.0);
    for (auto _ : st) benchmark::DoNotOptimize(hardy_quotient_min(1.5, grid));
}
BENCHMARK(BM_HardyQuotientMin)->Arg(250)->Arg(500)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
