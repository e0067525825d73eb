#include "ieuler/flux.hpp"

#include <algorithm>
#include <cmath>

namespace ieuler {

double upwind_face_value(double z_k, double z_l, double u_face) { return u_face >= 0.0 ? z_k : z_l; }

double minmod(double a, double b) {
    if (a * b <= 0.0) return 0.0;
    return std::abs(a) < std::abs(b) ? a : b;
}

double muscl_face_value(const std::array<double, 4>& z, double u_face, double z_kl) {
    const bool from_k = u_face >= 0.0;
    double candidate;
    if (from_k) candidate = z[1] + 0.5 * minmod(z[1] - z[0], z[2] - z[1]);
    else candidate = z[2] - 0.5 * minmod(z[2] - z[1], z[3] - z[2]);
    const Interval iv = admissible_interval(z[1], z[2], z_kl, from_k);
    return std::clamp(candidate, iv.lo, iv.hi);
}

std::vector<double> face_values(const std::vector<double>& z, const std::vector<double>& u,
                                Reconstruction rec, const ConvexFunction& phi) {
    const std::size_t n = z.size();
    std::vector<double> zf(n + 1);
    zf[0] = z[0];
    zf[n] = z[n - 1];
    for (std::size_t i = 1; i < n; ++i) {
        const double zk = z[i - 1], zl = z[i];
        if (rec == Reconstruction::upwind || zk == zl) {
            zf[i] = upwind_face_value(zk, zl, u[i]);
            continue;
        }
        const std::array<double, 4> st{i >= 2 ? z[i - 2] : zk, zk, zl, i + 1 < n ? z[i + 1] : zl};
        zf[i] = muscl_face_value(st, u[i], x_kl(phi, zk, zl));
    }
    return zf;
}

std::vector<double> dual_densities(const Grid& grid, const std::vector<double>& rho) {
    const std::size_t n = grid.n_cells();
    std::vector<double> rd(n + 1);
    rd[0] = rho[0];
    rd[n] = rho[n - 1];
    for (std::size_t i = 1; i < n; ++i)
        rd[i] = (grid.widths[i - 1] * rho[i - 1] + grid.widths[i] * rho[i]) / (2.0 * grid.dual_volume(i));
    return rd;
}

std::vector<double> dual_fluxes(const std::vector<double>& mass_flux) {
    const std::size_t n = mass_flux.size() - 1;
    std::vector<double> g(n);
    for (std::size_t k = 0; k < n; ++k) g[k] = 0.5 * (mass_flux[k] + mass_flux[k + 1]);
    return g;
}

void finish_flux_set(FluxSet& f, const Grid& grid, const std::vector<double>& rho) {
    f.rho_dual = dual_densities(grid, rho);
    f.dual_flux = dual_fluxes(f.mass_flux);
}

FluxSet assemble_mass_fluxes(const State& s, const Grid& grid, Reconstruction rec,
                             const EntropyWeights& w) {
    FluxSet f;
    f.rho_face = face_values(s.rho, s.u, rec, w.phi_rho());
    f.e_face = face_values(s.e, s.u, rec, w.phi_e());
    const std::size_t n = grid.n_cells();
    f.mass_flux.assign(n + 1, 0.0);
    for (std::size_t i = 1; i < n; ++i) f.mass_flux[i] = f.rho_face[i] * s.u[i];
    finish_flux_set(f, grid, s.rho);
    return f;
}

std::vector<double> dual_mass_balance_residual(const Grid& grid, const FluxSet& flux_old,
                                               const State& state_old, const State& state_new,
                                               double dt) {
    const std::size_t n = grid.n_cells();
    const auto rd_old = dual_densities(grid, state_old.rho);
    const auto rd_new = dual_densities(grid, state_new.rho);
    const auto& g = flux_old.dual_flux;
    std::vector<double> r(n + 1);
    for (std::size_t i = 0; i <= n; ++i) {
        const double out_right = i < n ? g[i] : 0.0;
        const double in_left = i > 0 ? g[i - 1] : 0.0;
        r[i] = grid.dual_volume(i) / dt * (rd_new[i] - rd_old[i]) + out_right - in_left;
    }
    return r;
}

}  // namespace ieuler
