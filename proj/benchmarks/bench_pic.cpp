#include <benchmark/benchmark.h>

#include "aerokin/particles.hpp"
#include "aerokin/rng.hpp"
#include "aerokin/simulation.hpp"
#include "aerokin/stokes.hpp"

using namespace aerokin;

namespace {
ParticleEnsemble random_particles(std::size_t n) {
    Rng rng(7);
    ParticleEnsemble p;
    p.reserve(n);
    for (std::size_t i = 0; i < n; ++i)
        p.push_back({rng.uniform(), rng.uniform(), rng.uniform()}, rng.normal3(), 1.0);
    return p;
}
}  // namespace

static void BM_Deposit(benchmark::State& state) {
    const auto p = random_particles(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(deposit_moments(p, 16, 2));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Deposit)->Arg(10000)->Arg(100000);

static void BM_Interpolate(benchmark::State& state) {
    const int n = 16;
    const std::size_t cells = static_cast<std::size_t>(n) * n * n;
    std::vector<double> ux(cells, 1.0), uy(cells, -0.5), uz(cells, 0.25);
    Rng rng(9);
    std::vector<Vec3> pos;
    for (int i = 0; i < 1024; ++i) pos.push_back({rng.uniform(), rng.uniform(), rng.uniform()});
    std::size_t i = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(interpolate_velocity(n, ux, uy, uz, pos[i & 1023]));
        ++i;
    }
}
BENCHMARK(BM_Interpolate);

static void BM_StokesSolve(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    StokesSolver solver(n);
    const auto p = random_particles(50000);
    const MomentGrids m = deposit_moments(p, n, 2);
    FluidField prev;
    for (auto _ : state) {
        FluidField f = solver.solve(m, 1.0, 2.0, prev);
        benchmark::DoNotOptimize(f.residual);
        prev = std::move(f);
    }
}
BENCHMARK(BM_StokesSolve)->Arg(16)->Arg(32);

static void BM_SimStep(benchmark::State& state) {
    SimConfig sc;
    sc.grid = 16;
    sc.particles = static_cast<std::size_t>(state.range(0));
    sc.dt = 0.01;
    sc.kappa = 2.0;
    sc.nu = 0.5;
    sc.seed = 3;
    sc.threads = 2;
    sc.components.push_back({1.0, {0.5, 0.5, 0.5}, 0.12, {0.8, 0, 0}, 0.3});
    Simulation sim(sc);
    for (auto _ : state) {
        sim.step();
        benchmark::DoNotOptimize(sim.time());
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_SimStep)->Arg(100000);

BENCHMARK_MAIN();
