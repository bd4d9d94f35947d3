#include "hexmono/aperiodicity.hpp"
#include "hexmono/ruleset_io.hpp"
#include "hexmono/solver.hpp"

#include <benchmark/benchmark.h>

using namespace hexmono;

namespace {

Patch st12_patch(int radius)
{
    SolverConfig cfg;
    cfg.seed = 1;
    return solve_region(region_cells(radius), shipped_ruleset("st12"), cfg).patch;
}

void BM_TorusScanSt12(benchmark::State& state)
{
    const auto rs = shipped_ruleset("st12");
    TorusScanOptions opts;
    opts.threads = 1;
    for (auto _ : state)
        benchmark::DoNotOptimize(torus_scan(static_cast<int>(state.range(0)), rs, opts).entries.size());
}

// A single torus far past the pinned range; the first SAT period sits at det 39.
void BM_SolveTorusSt12(benchmark::State& state)
{
    const auto rs = shipped_ruleset("st12");
    const TorusBasis b{{static_cast<int>(state.range(0)), 0}, {16, 1}};
    for (auto _ : state)
        benchmark::DoNotOptimize(solve_torus(b, rs).outcome);
}

void BM_Translations(benchmark::State& state)
{
    const int radius = static_cast<int>(state.range(0));
    const Patch p = st12_patch(radius);
    for (auto _ : state)
        benchmark::DoNotOptimize(scan_translations(p, radius).entries.size());
}

void BM_LoopCensus(benchmark::State& state)
{
    const Patch p = st12_patch(static_cast<int>(state.range(0)));
    for (auto _ : state)
        benchmark::DoNotOptimize(loop_census(p, "stripe").loops.size());
}

} // namespace

BENCHMARK(BM_TorusScanSt12)->Arg(9)->Arg(16)->Arg(25)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SolveTorusSt12)->Arg(38)->Arg(39)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Translations)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_LoopCensus)->Arg(4)->Arg(8)->Arg(12)->Unit(benchmark::kMicrosecond);

BENCHMARK_MAIN();
