#include <benchmark/benchmark.h>

#include "aerokin/collision_model.hpp"
#include "aerokin/gas_model.hpp"
#include "aerokin/limit_verifier.hpp"
#include "aerokin/rng.hpp"

using namespace aerokin;

static void BM_HalfMomentSphere(benchmark::State& state) {
    Rng rng(1);
    std::vector<Vec3> a, b;
    for (int i = 0; i < 1024; ++i) {
        a.push_back(rng.normal3());
        b.push_back(rng.normal3());
    }
    std::size_t i = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(half_moment_sphere(a[i & 1023], b[i & 1023]));
        ++i;
    }
}
BENCHMARK(BM_HalfMomentSphere);

static void BM_HalfMomentSphereFast(benchmark::State& state) {
    Rng rng(1);
    std::vector<Vec3> a, b;
    for (int i = 0; i < 1024; ++i) {
        a.push_back(rng.normal3());
        b.push_back(rng.normal3());
    }
    std::size_t i = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(detail::half_moment_sphere_fast(a[i & 1023], b[i & 1023]));
        ++i;
    }
}
BENCHMARK(BM_HalfMomentSphereFast);

static void BM_KernelKpg(benchmark::State& state) {
    const ScalingTriple s{1e-1, 1e-2, 0.5};
    Rng rng(2);
    std::vector<Vec3> v, V, W;
    for (int i = 0; i < 1024; ++i) {
        v.push_back(rng.normal3());
        V.push_back(rng.normal3());
        W.push_back(rng.normal3());
    }
    std::size_t i = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(kernel_K_pg(v[i & 1023], V[i & 1023], W[i & 1023], s, 1.0));
        ++i;
    }
}
BENCHMARK(BM_KernelKpg);

static void BM_ReducedMass(benchmark::State& state) {
    const ScalingTriple s{1e-2, 1e-4, 0.5};
    InelasticKernelQuadrature kq(1.0, s, state.range(0), 16, 4);
    Rng rng(3);
    std::vector<Vec3> V, W;
    for (int i = 0; i < 256; ++i) {
        V.push_back(rng.normal3());
        W.push_back(rng.normal3());
    }
    std::size_t i = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(kq.mass_pg(V[i & 255], W[i & 255]));
        ++i;
    }
}
BENCHMARK(BM_ReducedMass)->Arg(16)->Arg(32);

static void BM_Viscosity(benchmark::State& state) {
    VelocityQuadrature q(static_cast<int>(state.range(0)));
    GasModel m = GasModel::constant_alpha(1.0);
    for (auto _ : state) benchmark::DoNotOptimize(viscosity(m, q));
}
BENCHMARK(BM_Viscosity)->Arg(16)->Arg(24);

static void BM_Kappa(benchmark::State& state) {
    VelocityQuadrature q(16);
    const auto mom = moments_inelastic(1.0);
    for (auto _ : state) benchmark::DoNotOptimize(kappa(mom, q));
}
BENCHMARK(BM_Kappa);
