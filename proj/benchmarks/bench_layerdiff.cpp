#include <layerdiff/fdm.hpp>
#include <layerdiff/interface_system.hpp>
#include <layerdiff/presets.hpp>
#include <layerdiff/semianalytic.hpp>

#include <benchmark/benchmark.h>

using namespace layerdiff;

namespace {

// m alternating layers on [0, 1], Dirichlet 1 / no flux.
ValidatedProblem stack(int m) {
    ProblemSpec P;
    for (int i = 0; i <= m; ++i) P.breakpoints.push_back(static_cast<double>(i) / m);
    for (int i = 0; i < m; ++i) {
        P.diffusivity.push_back(i % 2 ? 0.1 : 1.0);
        P.initial.push_back(InitialCondition::constant(0.0));
    }
    P.gamma = P.diffusivity;
    P.left = {1.0, 0.0, BoundaryFunction::constant(1.0)};
    P.right = {0.0, 1.0, BoundaryFunction::constant(0.0)};
    P.apply_interfaces(std::vector<InterfaceDescription>(static_cast<std::size_t>(m - 1)));
    return validate(P);
}

void BM_BuildBasis(benchmark::State& state) {
    const auto p = stack(8);
    const int N = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(build_basis(p, N));
    state.SetComplexityN(N);
}
BENCHMARK(BM_BuildBasis)->RangeMultiplier(2)->Range(32, 512)->Complexity(benchmark::oN);

void BM_ComputeBetas(benchmark::State& state) {
    const auto p = stack(8);
    const auto B = build_basis(p, static_cast<int>(state.range(0)));
    const auto L = build_liftings(p);
    for (auto _ : state) benchmark::DoNotOptimize(compute_betas(p, B, L));
}
BENCHMARK(BM_ComputeBetas)->RangeMultiplier(4)->Range(32, 512);

// One assembly and Thomas solve at a single node; linear in m.
void BM_AssembleSolve(benchmark::State& state) {
    const int m = static_cast<int>(state.range(0));
    SemiAnalyticSolver solver(stack(m), {100, 14});
    const cplx s{3.0, 2.0};
    for (auto _ : state) benchmark::DoNotOptimize(solve(solver.assembler().assemble(s, 1.0 / s, 0.0)));
    state.SetComplexityN(m);
}
BENCHMARK(BM_AssembleSolve)->RangeMultiplier(2)->Range(2, 128)->Complexity(benchmark::oN);

void BM_InterfaceValues(benchmark::State& state) {
    SemiAnalyticSolver solver(stack(8), {static_cast<int>(state.range(0)), 14});
    for (auto _ : state) benchmark::DoNotOptimize(solver.interface_values_at(0.2));
}
BENCHMARK(BM_InterfaceValues)->Arg(50)->Arg(200);

void BM_EvaluateEightLayer(benchmark::State& state) {
    const auto p = preset("eight-layer").diffusion_problem();
    SemiAnalyticSolver solver(p, {static_cast<int>(state.range(0)), 14});
    const auto grid = Grid::uniform(p, 101, {0.01, 0.2, 3.0});
    for (auto _ : state) benchmark::DoNotOptimize(solver.evaluate(grid));
}
BENCHMARK(BM_EvaluateEightLayer)->Arg(50)->Arg(200)->Unit(benchmark::kMillisecond);

void BM_FdmStep(benchmark::State& state) {
    const auto p = preset("eight-layer").diffusion_problem();
    const double dt = 1e-4;
    FdmSolver fdm(p, {static_cast<int>(state.range(0)), dt});
    long k = 0;
    for (auto _ : state) fdm.advance_to(static_cast<double>(++k) * dt);
    state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_FdmStep)->Arg(100)->Arg(400);

}  // namespace

BENCHMARK_MAIN();
