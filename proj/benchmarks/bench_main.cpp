#include "vdw/energy.hpp"
#include "vdw/maxwell.hpp"
#include "vdw/viscous.hpp"

#include <benchmark/benchmark.h>

using namespace vdw;

namespace {

const EosParams kGas;
const Landscape kLand = construct(kGas);
const double kMid = 0.5 * (kLand.alpha0 + kLand.beta0);

void BM_Construct(benchmark::State& state)
{
    for (auto _ : state)
        benchmark::DoNotOptimize(construct(kGas));
}
BENCHMARK(BM_Construct);

// one residual evaluation of the cell conditions at the solved orbit
void BM_PeriodIntegrals(benchmark::State& state)
{
    double eps = 1.0 / state.range(0);
    CellSolution cs = solve_cells(kGas, kLand, kMid, eps, 1);
    for (auto _ : state)
        benchmark::DoNotOptimize(period_integrals(kGas, cs.fi));
}
BENCHMARK(BM_PeriodIntegrals)->Arg(20)->Arg(100)->Arg(500);

void BM_SolveCells(benchmark::State& state)
{
    double eps = 1.0 / state.range(0);
    for (auto _ : state)
        benchmark::DoNotOptimize(solve_cells(kGas, kLand, kMid, eps, 1));
}
BENCHMARK(BM_SolveCells)->Arg(20)->Arg(100)->Unit(benchmark::kMillisecond);

void BM_Reconstruct(benchmark::State& state)
{
    const double eps = 0.02;
    CellSolution cs = solve_cells(kGas, kLand, kMid, eps, 1);
    int grid = static_cast<int>(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(reconstruct_profile(kGas, kMid, eps, cs.fi, Orientation::Valley, grid));
    state.SetItemsProcessed(state.iterations() * grid);
}
BENCHMARK(BM_Reconstruct)->Arg(4096)->Arg(65536)->Unit(benchmark::kMillisecond);

void BM_AsymptoticS(benchmark::State& state)
{
    for (auto _ : state)
        benchmark::DoNotOptimize(asymptotic_S(kGas, kLand));
}
BENCHMARK(BM_AsymptoticS);

} // namespace

BENCHMARK_MAIN();
