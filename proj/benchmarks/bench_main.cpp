#include <benchmark/benchmark.h>

#include "dspec/forms.hpp"
#include "dspec/kernels.hpp"
#include "dspec/potential.hpp"
#include "dspec/spectral.hpp"
#include "dspec/stochastic.hpp"

namespace {

void BM_AssemblePath(benchmark::State& state) {
    const auto g = dspec::lattice_path(static_cast<int>(state.range(0)), 1.0);
    for (auto _ : state) {
        auto fs = dspec::assemble(g);
        benchmark::DoNotOptimize(fs.S);
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_AssemblePath)->RangeMultiplier(4)->Range(64, 4096)->Complexity();

void BM_BottomDense(benchmark::State& state) {
    const auto fs = dspec::assemble(dspec::lattice_path(static_cast<int>(state.range(0)), 1.0));
    for (auto _ : state) {
        auto s = dspec::bottom_of_spectrum(fs, 1, dspec::EigMethod::Dense);
        benchmark::DoNotOptimize(s.eigenvalues);
    }
}
BENCHMARK(BM_BottomDense)->Arg(256)->Arg(512)->Arg(1024);

void BM_BottomLanczos(benchmark::State& state) {
    const auto fs = dspec::assemble(dspec::lattice_path(static_cast<int>(state.range(0)), 1.0));
    for (auto _ : state) {
        auto s = dspec::bottom_of_spectrum(fs, 1, dspec::EigMethod::Iterative);
        benchmark::DoNotOptimize(s.eigenvalues);
    }
}
BENCHMARK(BM_BottomLanczos)->Arg(256)->Arg(512)->Arg(1024)->Arg(2048)->Arg(8192);

void BM_SemigroupMatrix(benchmark::State& state) {
    const auto fs = dspec::assemble(dspec::lattice_path(static_cast<int>(state.range(0)), 1.0));
    for (auto _ : state) {
        auto E = dspec::semigroup_matrix(fs, 1.0);
        benchmark::DoNotOptimize(E);
    }
}
BENCHMARK(BM_SemigroupMatrix)->Arg(64)->Arg(128)->Arg(256);

void BM_EquilibriumSolve(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const auto fs = dspec::assemble(dspec::lattice_path(n, 1.0));
    const dspec::VertexSet B{n / 2};
    for (auto _ : state) {
        auto eq = dspec::equilibrium_potential(fs, B);
        benchmark::DoNotOptimize(eq.e_B);
    }
}
BENCHMARK(BM_EquilibriumSolve)->RangeMultiplier(4)->Range(64, 4096);

void BM_SimulatePaths(benchmark::State& state) {
    const auto fs = dspec::assemble(dspec::lattice_path(64, 1.0));
    std::uint64_t i = 0;
    for (auto _ : state) {
        auto path = dspec::simulate_path(fs, 32, 5.0, dspec::sample_stream(1, i++));
        benchmark::DoNotOptimize(path.states);
    }
}
BENCHMARK(BM_SimulatePaths);

void BM_McKilledSemigroup(benchmark::State& state) {
    const auto fs = dspec::assemble(dspec::lattice_path(32, 1.0));
    const Eigen::VectorXd f = Eigen::VectorXd::Ones(32);
    for (auto _ : state) {
        auto est = dspec::mc_killed_semigroup(fs, dspec::VertexSet{0}, f, 16, 1.0,
                                              static_cast<std::size_t>(state.range(0)), 7);
        benchmark::DoNotOptimize(est.mean);
    }
}
BENCHMARK(BM_McKilledSemigroup)->Arg(1000)->Arg(10000);

} // namespace

BENCHMARK_MAIN();
