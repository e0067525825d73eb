#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "ieuler/convex.hpp"
#include "ieuler/flux.hpp"
#include "ieuler/riemann.hpp"
#include "ieuler/scheme_explicit.hpp"
#include "ieuler/scheme_pc.hpp"

using namespace ieuler;

namespace {

State sod_state(const Grid& g) {
    const RiemannPreset p = find_preset("sod");
    return init_riemann(g, p.left, p.right, p.x0, p.gamma);
}

void BM_step_pc(benchmark::State& st) {
    const auto n = static_cast<std::size_t>(st.range(0));
    const Grid g = build_uniform_grid(0.0, 1.0, n);
    SchemeConfig cfg;
    cfg.reconstruction = st.range(1) ? Reconstruction::muscl : Reconstruction::upwind;
    const double dt = 0.2 * g.cell_width();
    // one step in, so that the prediction sees convection
    PcHistory h = PcHistory::bootstrap(sod_state(g), dt);
    h = advance_history(h, step_pc(g, h, dt, cfg), dt);
    for (auto _ : st) benchmark::DoNotOptimize(step_pc(g, h, dt, cfg));
    st.SetItemsProcessed(st.iterations() * static_cast<long>(n));
}
BENCHMARK(BM_step_pc)->ArgsProduct({{500, 2000, 8000}, {0, 1}})->Unit(benchmark::kMicrosecond);

void BM_step_explicit(benchmark::State& st) {
    const auto n = static_cast<std::size_t>(st.range(0));
    const Grid g = build_uniform_grid(0.0, 1.0, n);
    SchemeConfig cfg;
    cfg.scheme = SchemeKind::explicit_segregated;
    const State s = sod_state(g);
    const double dt = explicit_dt_limit(g, s, cfg);
    for (auto _ : st) benchmark::DoNotOptimize(step_explicit(g, s, dt, cfg));
    st.SetItemsProcessed(st.iterations() * static_cast<long>(n));
}
BENCHMARK(BM_step_explicit)->Arg(500)->Arg(2000)->Arg(8000)->Unit(benchmark::kMicrosecond);

void BM_mass_flux_assembly(benchmark::State& st) {
    const auto n = static_cast<std::size_t>(st.range(0));
    const Grid g = build_uniform_grid(0.0, 1.0, n);
    State s = sod_state(g);
    std::mt19937_64 gen(5);
    std::uniform_real_distribution<double> v(-1.0, 1.0);
    for (std::size_t i = 1; i < n; ++i) s.u[i] = v(gen);
    const auto rec = st.range(1) ? Reconstruction::muscl : Reconstruction::upwind;
    for (auto _ : st) benchmark::DoNotOptimize(assemble_mass_fluxes(s, g, rec, EntropyWeights{1.4}));
    st.SetItemsProcessed(st.iterations() * static_cast<long>(n));
}
BENCHMARK(BM_mass_flux_assembly)->ArgsProduct({{2000}, {0, 1}});

void BM_x_kl(benchmark::State& st) {
    const ConvexFunction phi = st.range(0) ? ConvexFunction::energy(1.4) : ConvexFunction::density(1.4);
    std::mt19937_64 gen(3);
    std::uniform_real_distribution<double> d(0.1, 10.0);
    std::vector<double> a(1024), b(1024);
    for (std::size_t i = 0; i < a.size(); ++i) a[i] = d(gen), b[i] = d(gen);
    const bool bisect = st.range(1) != 0;
    for (auto _ : st)
        for (std::size_t i = 0; i < a.size(); ++i)
            benchmark::DoNotOptimize(bisect ? x_kl_bisection(phi, a[i], b[i]) : x_kl(phi, a[i], b[i]));
    st.SetItemsProcessed(st.iterations() * static_cast<long>(a.size()));
}
BENCHMARK(BM_x_kl)->ArgsProduct({{0, 1}, {0, 1}});

void BM_exact_riemann(benchmark::State& st) {
    const RiemannPreset p = find_preset("toro-test5");
    for (auto _ : st) benchmark::DoNotOptimize(solve_riemann(p.left, p.right, p.gamma));
}
BENCHMARK(BM_exact_riemann);

}  // namespace

BENCHMARK_MAIN();
