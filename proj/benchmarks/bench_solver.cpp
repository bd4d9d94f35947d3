#include "hexmono/dendrite.hpp"
#include "hexmono/ruleset_io.hpp"
#include "hexmono/solver.hpp"

#include <benchmark/benchmark.h>

using namespace hexmono;

namespace {

void solve(benchmark::State& state, const char* name)
{
    const Region region = region_cells(static_cast<int>(state.range(0)));
    const auto rs = shipped_ruleset(name);
    // fixed seed: st12 search has a heavy tail past radius 10 (seeds 2 and 3 hit the node limit at 12)
    SolverConfig cfg;
    cfg.seed = 1;
    std::uint64_t nodes = 0;
    for (auto _ : state) {
        const auto r = solve_region(region, rs, cfg);
        if (r.outcome != Outcome::SAT)
            state.SkipWithError("not SAT");
        nodes += r.stats.nodes;
        benchmark::DoNotOptimize(r.patch.size());
    }
    state.counters["tiles"] = static_cast<double>(region.size());
    state.counters["nodes"] = benchmark::Counter(static_cast<double>(nodes), benchmark::Counter::kAvgIterations);
}

void BM_SolveSt12(benchmark::State& state) { solve(state, "st12"); }
void BM_SolveHexToo6(benchmark::State& state) { solve(state, "hextoo6"); }

void BM_PlacementOrder(benchmark::State& state)
{
    SolverConfig cfg;
    cfg.seed = 1;
    const auto p = solve_region(region_cells(static_cast<int>(state.range(0))), shipped_ruleset("hextoo6"), cfg).patch;
    for (auto _ : state)
        benchmark::DoNotOptimize(placement_order(p));
    state.counters["tiles"] = static_cast<double>(p.size());
}

void BM_CountSolutions(benchmark::State& state)
{
    const Region region = region_cells(1);
    const auto rs = shipped_ruleset("st12");
    for (auto _ : state)
        benchmark::DoNotOptimize(count_solutions(region, *rs));
}

} // namespace

BENCHMARK(BM_SolveSt12)->DenseRange(2, 12, 2)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SolveHexToo6)->DenseRange(2, 12, 2)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_PlacementOrder)->Arg(4)->Arg(8)->Arg(12)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_CountSolutions)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
