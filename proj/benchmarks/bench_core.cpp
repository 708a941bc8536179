// Microbenchmarks for the solver hot paths: Liouvillian assembly, the dense
// steady-state solve, and master-equation propagation.

#include "pbsim/dynamics.hpp"
#include "pbsim/runner.hpp"

#include <benchmark/benchmark.h>

#include <cmath>

namespace {

using namespace pbsim;

ModelParams bench_params(int fock_dim) {
    ModelParams p;
    p.g = 2.0 * M_PI * 1.1;
    p.squeeze = SqueezeTransform::from_r(2.0);
    p.eps_L = p.g_eff() / 20.0 / p.squeeze.U;
    p.gamma_m_eff = 2.0 * p.g;
    p.gamma_z = 2.0 * M_PI * 10.0;
    p.fock_dim = fock_dim;
    return p;
}

void BM_BuildLiouvillian(benchmark::State& state) {
    const ModelParams p = bench_params(int(state.range(0)));
    const Operator h = build_effective_hamiltonian(p);
    const auto cs = collapse_set(p);
    for (auto _ : state) {
        Liouvillian L = build_liouvillian(h, cs);
        benchmark::DoNotOptimize(L.matrix.data());
    }
}
BENCHMARK(BM_BuildLiouvillian)->Arg(10)->Arg(15)->Arg(20);

void BM_SteadyState(benchmark::State& state) {
    const ModelParams p = bench_params(int(state.range(0)));
    const Liouvillian L = build_liouvillian(build_effective_hamiltonian(p), collapse_set(p));
    for (auto _ : state) {
        DensityMatrix rho = steady_state(L);
        benchmark::DoNotOptimize(rho.mat.data());
    }
}
BENCHMARK(BM_SteadyState)->Arg(10)->Arg(15)->Arg(20)->Unit(benchmark::kMillisecond);

void BM_PropagateUnitTime(benchmark::State& state) {
    const ModelParams p = bench_params(int(state.range(0)));
    LindbladGenerator gen{{p.space(), build_effective_hamiltonian(p).mat, {}}, collapse_set(p)};
    const DensityMatrix rho0 = vacuum_state(p.space());
    const std::vector<double> grid{0.0, 1.0 / p.gamma_m_eff};
    for (auto _ : state) {
        auto states = propagate(gen, rho0, grid);
        benchmark::DoNotOptimize(states.back().mat.data());
    }
}
BENCHMARK(BM_PropagateUnitTime)->Arg(10)->Arg(15)->Unit(benchmark::kMillisecond);

void BM_G2Tau(benchmark::State& state) {
    const ModelParams p = bench_params(15);
    LindbladGenerator gen{{p.space(), build_effective_hamiltonian(p).mat, {}}, collapse_set(p)};
    const DensityMatrix rho_ss = steady_state(gen.liouvillian());
    std::vector<double> taus;
    for (int i = 0; i <= 20; ++i) taus.push_back(2.0 / p.gamma_m_eff * i / 20.0);
    for (auto _ : state) {
        auto vals = g2_tau(gen, rho_ss, taus);
        benchmark::DoNotOptimize(vals.data());
    }
}
BENCHMARK(BM_G2Tau)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
