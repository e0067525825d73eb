#include "ieuler/state.hpp"

#include <cmath>

#include "ieuler/errors.hpp"
#include "ieuler/flux.hpp"

namespace ieuler {

void SchemeConfig::validate() const {
    if (!(gamma > 1.0)) throw ConfigError("scheme.gamma must exceed 1");
    if (!(cfl_fraction > 0.0 && cfl_fraction <= 1.0))
        throw ConfigError("scheme.cfl_fraction must lie in (0, 1]");
    if (!(end_time >= 0.0)) throw ConfigError("problem.end_time must be non-negative");
    if (!(picard_tol > 0.0)) throw ConfigError("scheme.picard_tol must be positive");
    if (picard_max_iter < 1) throw ConfigError("scheme.picard_max_iter must be at least 1");
    if (stabilization) {
        const auto& st = *stabilization;
        if (!(st.q >= 2.0)) throw ConfigError("scheme.stabilization_q must be at least 2");
        if (!(st.alpha > 0.0)) throw ConfigError("scheme.stabilization_alpha must be positive");
        if (!(st.alpha < st.q - 1.0))
            throw ConfigError("scheme.stabilization_alpha must be smaller than q - 1");
    }
}

double eos_pressure(double rho, double e, double gamma) {
    if (!(rho > 0.0) || !(e > 0.0) || !(gamma > 1.0))
        throw DomainError("eos_pressure: rho, e must be positive and gamma > 1");
    return (gamma - 1.0) * rho * e;
}

double eos_energy_from_pressure(double rho, double p, double gamma) {
    if (!(rho > 0.0)) throw DomainError("eos_energy_from_pressure: rho must be positive");
    if (!(p >= 0.0)) throw DomainError("eos_energy_from_pressure: p must be non-negative");
    return p / ((gamma - 1.0) * rho);
}

double sound_speed(double rho, double p, double gamma) { return std::sqrt(gamma * p / rho); }

void close_state(State& s, double gamma) {
    s.p.resize(s.rho.size());
    for (std::size_t k = 0; k < s.rho.size(); ++k) s.p[k] = eos_pressure(s.rho[k], s.e[k], gamma);
}

State init_riemann(const Grid& grid, const Primitive& left, const Primitive& right, double x0,
                   double gamma) {
    if (!(x0 > grid.domain_left && x0 < grid.domain_right))
        throw ConfigError("init_riemann: x0 must lie inside the domain");
    if (!(left.rho > 0.0 && left.p > 0.0 && right.rho > 0.0 && right.p > 0.0))
        throw ConfigError("init_riemann: densities and pressures must be positive");

    const std::size_t n = grid.n_cells();
    State s;
    s.rho.resize(n);
    s.e.resize(n);
    for (std::size_t k = 0; k < n; ++k) {
        const Primitive& w = grid.centers[k] < x0 ? left : right;
        s.rho[k] = w.rho;
        s.e[k] = eos_energy_from_pressure(w.rho, w.p, gamma);
    }
    close_state(s, gamma);

    s.u.assign(n + 1, 0.0);
    for (std::size_t i = 1; i < n; ++i) {
        const double x = grid.faces[i];
        if (x < x0) s.u[i] = left.u;
        else if (x > x0) s.u[i] = right.u;
        else s.u[i] = 0.5 * (left.u + right.u);
    }
    return s;
}

double internal_energy(const State& s, const Grid& grid) {
    double sum = 0.0;
    for (std::size_t k = 0; k < grid.n_cells(); ++k) sum += grid.widths[k] * s.rho[k] * s.e[k];
    return sum;
}

double dual_kinetic_energy(const Grid& grid, const std::vector<double>& rho_dual,
                           const std::vector<double>& u) {
    double sum = 0.0;
    for (std::size_t i = 0; i < grid.n_faces(); ++i)
        sum += 0.5 * grid.dual_volume(i) * rho_dual[i] * u[i] * u[i];
    return sum;
}

Totals totals(const State& s, const Grid& grid) {
    Totals t;
    for (std::size_t k = 0; k < grid.n_cells(); ++k) t.mass += grid.widths[k] * s.rho[k];
    t.energy = internal_energy(s, grid) + dual_kinetic_energy(grid, dual_densities(grid, s.rho), s.u);
    return t;
}

}  // namespace ieuler
