#include <benchmark/benchmark.h>

#include "gapforge/hierarchy.hpp"
#include "gapforge/numverify.hpp"
#include "gapforge/polyfactory.hpp"
#include "gapforge/riccati.hpp"

using namespace gapforge;

namespace {

HierarchySpec asymmetric_spec() {
    HierarchySpec s;
    s.period = 2;
    s.gaps = {Rational(1), Rational(3)};
    return s;
}

void BM_laguerre_series(benchmark::State& state) {
    const Rational gamma(-1, 4);
    const unsigned p = static_cast<unsigned>(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(laguerre_series(gamma, p));
}
BENCHMARK(BM_laguerre_series)->Arg(8)->Arg(16)->Arg(32);

void BM_laguerre_rodrigues(benchmark::State& state) {
    const Rational gamma(-1, 4);
    const unsigned p = static_cast<unsigned>(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(
            laguerre_generalized_rodrigues(gamma, p, D2Sign::plus));
}
BENCHMARK(BM_laguerre_rodrigues)->Arg(8)->Arg(16)->Arg(32);

void BM_hermite_ladder(benchmark::State& state) {
    const unsigned n = static_cast<unsigned>(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(hermite(n, HermiteRoute::ladder));
}
BENCHMARK(BM_hermite_ladder)->Arg(8)->Arg(16)->Arg(32);

void BM_build_eigenstate(benchmark::State& state) {
    const HierarchySpec spec = asymmetric_spec();
    const unsigned n = static_cast<unsigned>(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(build_eigenstate(spec, 1, n));
}
BENCHMARK(BM_build_eigenstate)->Arg(4)->Arg(12)->Arg(24);

void BM_overlap_pair(benchmark::State& state) {
    const HierarchySpec spec = asymmetric_spec();
    const QuasiState a = build_eigenstate(spec, 1, 6);
    const QuasiState b = build_eigenstate(spec, 1, 6);
    const QuadratureScheme scheme = overlap_scheme(a, b);
    for (auto _ : state)
        benchmark::DoNotOptimize(overlap(a, b, spec, scheme));
}
BENCHMARK(BM_overlap_pair);

void BM_fd_spectrum(benchmark::State& state) {
    HierarchySpec spec;
    spec.period = 1;
    spec.gaps = {Rational(2)};
    const Hierarchy h = build_hierarchy(spec);
    Grid grid;
    grid.points = static_cast<int>(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(fd_spectrum(h.potentials[0], spec, grid, 6));
}
BENCHMARK(BM_fd_spectrum)->Arg(501)->Arg(1001)->Arg(2001);

void BM_riccati_period2(benchmark::State& state) {
    RiccatiProblem p;
    p.period = 2;
    p.gaps = {1.0, 3.0};
    for (auto _ : state)
        benchmark::DoNotOptimize(solve_periodic(p));
}
BENCHMARK(BM_riccati_period2);

} // namespace

BENCHMARK_MAIN();
