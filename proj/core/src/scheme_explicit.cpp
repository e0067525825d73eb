#include "ieuler/scheme_explicit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <fmt/format.h>

#include "ieuler/dual_kinetic.hpp"
#include "ieuler/errors.hpp"

namespace ieuler {

double ExplicitLimits::min() const { return std::min({advective, primal_mass, dual_mass, energy}); }

ExplicitLimits explicit_limits(const Grid& grid, const State& s, const FluxSet& f, double gamma) {
    constexpr double inf = std::numeric_limits<double>::infinity();
    const std::size_t n = grid.n_cells();
    ExplicitLimits lim{inf, inf, inf, inf};
    for (std::size_t k = 0; k < n; ++k) {
        const double h = grid.widths[k];
        const double c = sound_speed(s.rho[k], s.p[k], gamma);
        const double speed = std::max(std::abs(s.u[k]), std::abs(s.u[k + 1])) + c;
        if (speed > 0.0) lim.advective = std::min(lim.advective, h / speed);

        const double out_r = std::max(f.mass_flux[k + 1], 0.0);
        const double out_l = std::max(-f.mass_flux[k], 0.0);
        if (out_r + out_l > 0.0) lim.primal_mass = std::min(lim.primal_mass, h * s.rho[k] / (out_r + out_l));

        const double div = s.u[k + 1] - s.u[k];
        const double drain = out_r * f.e_face[k + 1] + out_l * f.e_face[k] +
                             (gamma - 1.0) * s.rho[k] * s.e[k] * std::max(div, 0.0);
        if (drain > 0.0) lim.energy = std::min(lim.energy, h * s.rho[k] * s.e[k] / drain);
    }
    for (std::size_t i = 0; i <= n; ++i) {
        const double out = (i < n ? std::max(f.dual_flux[i], 0.0) : 0.0) +
                           (i > 0 ? std::max(-f.dual_flux[i - 1], 0.0) : 0.0);
        if (out > 0.0) lim.dual_mass = std::min(lim.dual_mass, grid.dual_volume(i) * f.rho_dual[i] / out);
    }
    return lim;
}

double explicit_dt_limit(const Grid& grid, const State& s, const SchemeConfig& cfg) {
    const FluxSet f = assemble_mass_fluxes(s, grid, cfg.reconstruction, EntropyWeights{cfg.gamma});
    return cfg.cfl_fraction * explicit_limits(grid, s, f, cfg.gamma).min();
}

std::vector<double> stabilization_term(const std::vector<double>& u, const Grid& grid, double q,
                                       double alpha) {
    const std::size_t n = grid.n_cells();
    double h_max = 0.0;
    for (double w : grid.widths) h_max = std::max(h_max, w);
    const double scale = std::pow(h_max, alpha);
    std::vector<double> flux(n);
    for (std::size_t k = 0; k < n; ++k) {
        const double g = (u[k + 1] - u[k]) / grid.widths[k];
        flux[k] = q == 2.0 ? g : std::pow(std::abs(g), q - 2.0) * g;
    }
    std::vector<double> s(n + 1, 0.0);
    for (std::size_t i = 1; i < n; ++i) s[i] = scale * (flux[i] - flux[i - 1]) / grid.dual_volume(i);
    return s;
}

std::vector<double> corrective_source_explicit(const Grid& grid, const State& state_old,
                                               const State& state_new, const FluxSet& flux,
                                               double dt) {
    const auto r = dual_kinetic_remainder(grid, flux.rho_dual, state_old.u, state_new.u, state_old.u,
                                          flux.dual_flux, dt);
    return dispatch_to_cells(grid, r);
}

namespace {

double pressure_work(const State& s) {
    double w = 0.0;
    for (std::size_t k = 0; k < s.p.size(); ++k) w += s.p[k] * (s.u[k + 1] - s.u[k]);
    return w;
}

}  // namespace

ExpStepResult step_explicit(const Grid& grid, const State& s, const ExplicitCarry& carry, double dt,
                            const SchemeConfig& cfg, CflPolicy policy) {
    const std::size_t n = grid.n_cells();
    ExpStepResult res;
    res.flux = assemble_mass_fluxes(s, grid, cfg.reconstruction, EntropyWeights{cfg.gamma});
    const FluxSet& f = res.flux;

    const ExplicitLimits lim = explicit_limits(grid, s, f, cfg.gamma);
    const double allowed = cfg.cfl_fraction * lim.min();
    if (policy == CflPolicy::enforce && dt > allowed * (1.0 + 1e-12))
        throw CflViolation(fmt::format("explicit step refused: dt = {:.6g} exceeds the limit {:.6g}", dt, allowed),
                           allowed);
    res.record.cfl_used = std::isfinite(lim.advective) ? dt / lim.advective : 0.0;

    res.record.S.assign(n, 0.0);
    if (cfg.corrective_source && !carry.source_rate.empty() && carry.dt > 0.0)
        for (std::size_t k = 0; k < n; ++k) res.record.S[k] = carry.source_rate[k] * carry.dt / dt;
    const auto& S = res.record.S;

    State& nx = res.next;
    nx.rho.resize(n);
    nx.e.resize(n);
    for (std::size_t k = 0; k < n; ++k) {
        const double h = grid.widths[k];
        nx.rho[k] = s.rho[k] - dt / h * (f.mass_flux[k + 1] - f.mass_flux[k]);
        const double energy = s.rho[k] * s.e[k] -
                              dt / h * (f.mass_flux[k + 1] * f.e_face[k + 1] - f.mass_flux[k] * f.e_face[k]) -
                              dt / h * s.p[k] * (s.u[k + 1] - s.u[k]) + dt * S[k];
        nx.e[k] = energy / nx.rho[k];
    }
    for (std::size_t k = 0; k < n; ++k)
        if (!(nx.rho[k] > 0.0) || !(nx.e[k] > 0.0) || !std::isfinite(nx.e[k]))
            throw NumericalError(fmt::format("explicit step: non-positive density or energy in cell {}", k));
    close_state(nx, cfg.gamma);

    const auto rd_new = dual_densities(grid, nx.rho);
    std::vector<double> stab;
    if (cfg.stabilization) stab = stabilization_term(s.u, grid, cfg.stabilization->q, cfg.stabilization->alpha);
    nx.u.assign(n + 1, 0.0);
    for (std::size_t i = 1; i < n; ++i) {
        const double vol = grid.dual_volume(i);
        const double g_r = f.dual_flux[i];
        const double g_l = f.dual_flux[i - 1];
        const double u_r = g_r >= 0.0 ? s.u[i] : s.u[i + 1];
        const double u_l = g_l >= 0.0 ? s.u[i - 1] : s.u[i];
        double momentum = vol * f.rho_dual[i] * s.u[i] - dt * (g_r * u_r - g_l * u_l) - dt * (nx.p[i] - nx.p[i - 1]);
        if (!stab.empty()) momentum += dt * vol * stab[i];
        nx.u[i] = momentum / (vol * rd_new[i]);
    }
    nx.time = s.time + dt;

    if (!stab.empty())
        for (std::size_t i = 1; i < n; ++i) res.record.stabilization_energy += dt * grid.dual_volume(i) * stab[i] * nx.u[i];

    // Remainder of this momentum step; the stabilization work itself is not compensated.
    res.carry.source_rate = corrective_source_explicit(grid, s, nx, f, dt);
    res.carry.dt = dt;

    for (std::size_t k = 0; k < n; ++k) {
        res.record.injected_energy += dt * grid.widths[k] * S[k];
        res.record.withheld_energy += dt * grid.widths[k] * res.carry.source_rate[k];
    }
    res.record.pressure_work_old = dt * pressure_work(s);
    res.record.pressure_work_new = dt * pressure_work(nx);
    return res;
}

ExpStepResult step_explicit(const Grid& grid, const State& s, double dt, const SchemeConfig& cfg,
                            CflPolicy policy) {
    return step_explicit(grid, s, ExplicitCarry{}, dt, cfg, policy);
}

}  // namespace ieuler
