// Timings for the hot paths: curved geometry, form assembly, full solves.

#include "surfstokes/assembly.hpp"
#include "surfstokes/benchmark.hpp"
#include "surfstokes/manufactured.hpp"

#include <benchmark/benchmark.h>

using namespace surfstokes;

namespace {

std::shared_ptr<const CurvedSurface> surface(int level, int k)
{
    const LevelSetField field = LevelSetField::biconcave(0.95, 0.96);
    return std::make_shared<const CurvedSurface>(mesh_hierarchy_level(field, kDefaultBaseLevel, level), field, k);
}

// Args: level, order.
void BM_CurvedSurface(benchmark::State& state)
{
    const LevelSetField field = LevelSetField::biconcave(0.95, 0.96);
    const LinearSurfaceMesh mesh = mesh_hierarchy_level(field, kDefaultBaseLevel, static_cast<int>(state.range(0)));
    for (auto _ : state) {
        const CurvedSurface cs(mesh, field, static_cast<int>(state.range(1)));
        benchmark::DoNotOptimize(cs.num_triangles());
    }
    state.counters["faces"] = static_cast<double>(mesh.num_triangles());
}
BENCHMARK(BM_CurvedSurface)->Args({1, 2})->Args({1, 3})->Args({2, 3})->Unit(benchmark::kMillisecond);

void BM_AssembleVelocityBlock(benchmark::State& state)
{
    const int k = static_cast<int>(state.range(1));
    const auto cs = surface(static_cast<int>(state.range(0)), k);
    const AssemblyContext ctx(*cs, default_quadrature_degree(k));
    const VectorSpace u(*cs, k);
    for (auto _ : state) {
        benchmark::DoNotOptimize(assemble_a_Th(ctx, u).nonZeros());
    }
    state.counters["dofs"] = static_cast<double>(u.dim());
}
BENCHMARK(BM_AssembleVelocityBlock)->Args({1, 2})->Args({1, 3})->Args({2, 3})->Unit(benchmark::kMillisecond);

void BM_AssembleStreamStiffness(benchmark::State& state)
{
    const int k = static_cast<int>(state.range(1));
    const auto cs = surface(static_cast<int>(state.range(0)), k);
    const AssemblyContext ctx(*cs, default_quadrature_degree(k));
    const ScalarSpace s(*cs, k + 1);
    for (auto _ : state) {
        benchmark::DoNotOptimize(assemble_stiffness_K(ctx, s).nonZeros());
    }
    state.counters["dofs"] = static_cast<double>(s.dim());
}
BENCHMARK(BM_AssembleStreamStiffness)->Args({1, 2})->Args({1, 3})->Args({2, 3})->Unit(benchmark::kMillisecond);

void BM_SolveTaylorHood(benchmark::State& state)
{
    const ManufacturedCase mc;
    const VectorField f = [&mc](const Vec3& x) { return mc.forcing_f(x); };
    const auto cs = surface(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(solve_taylor_hood(cs, f).diagnostics.relative_residual);
    }
}
BENCHMARK(BM_SolveTaylorHood)->Args({0, 2})->Args({1, 2})->Args({1, 3})->Unit(benchmark::kMillisecond);

void BM_SolveStreamFunction(benchmark::State& state)
{
    const ManufacturedCase mc;
    const VectorField f = [&mc](const Vec3& x) { return mc.forcing_f(x); };
    const auto cs = surface(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(solve_stream_function(cs, f).diagnostics.relative_residual);
    }
}
BENCHMARK(BM_SolveStreamFunction)->Args({0, 2})->Args({1, 2})->Args({1, 3})->Unit(benchmark::kMillisecond);

void BM_LocateVortex(benchmark::State& state)
{
    BenchmarkConfig cfg;
    cfg.k = 2;
    cfg.level = 1;
    const LevelSetField field = cfg.field();
    const auto cs = std::make_shared<const CurvedSurface>(mesh_hierarchy_level(field, cfg.base_level, cfg.level),
                                                          field, cfg.k);
    const StreamFunctionSolution s =
        solve_stream_function(cs, [&cfg](const Vec3& x) { return benchmark_forcing(cfg, x); });
    for (auto _ : state) {
        benchmark::DoNotOptimize(locate_vortex(s, cfg.face_centre()).distance);
    }
}
BENCHMARK(BM_LocateVortex)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
