#include "ieuler/entropy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace ieuler {

std::vector<double> entropy_residual_field(const Grid& grid, const State& state_old,
                                           const State& state_new, const FluxSet& flux, double dt,
                                           const EntropyWeights& w, TimeLevel level) {
    const std::size_t n = grid.n_cells();
    const std::vector<double>& u = level == TimeLevel::implicit_level ? state_new.u : state_old.u;
    std::vector<double> eta_face(n + 1, 0.0);
    for (std::size_t i = 1; i < n; ++i) eta_face[i] = eta(flux.rho_face[i], flux.e_face[i], w);
    std::vector<double> r(n);
    for (std::size_t k = 0; k < n; ++k) {
        const double d_eta = eta(state_new.rho[k], state_new.e[k], w) - eta(state_old.rho[k], state_old.e[k], w);
        r[k] = grid.widths[k] / dt * d_eta + eta_face[k + 1] * u[k + 1] - eta_face[k] * u[k];
    }
    return r;
}

double global_entropy(const State& s, const Grid& grid, const EntropyWeights& w) {
    double sum = 0.0;
    for (std::size_t k = 0; k < grid.n_cells(); ++k) sum += grid.widths[k] * eta(s.rho[k], s.e[k], w);
    return sum;
}

namespace {

// Smooth bump with value 1 at s = 0 and support (-1, 1).
double bump(double s) {
    if (std::abs(s) >= 1.0) return 0.0;
    return std::exp(1.0 - 1.0 / (1.0 - s * s));
}

double bump_slope_sup() {
    static const double sup = [] {
        double m = 0.0;
        const int samples = 200000;
        for (int j = 1; j < samples; ++j) {
            const double s = static_cast<double>(j) / samples;
            const double d = bump(s) * 2.0 * s / ((1.0 - s * s) * (1.0 - s * s));
            m = std::max(m, d);
        }
        return m;
    }();
    return sup;
}

}  // namespace

TestFunctionFamily::TestFunctionFamily(double x_left, double x_right, double t_end) {
    const double len = x_right - x_left;
    for (double c : {0.2, 0.4, 0.6, 0.8})
        for (double r : {0.1, 0.18})
            for (double life : {1.0, 0.5}) {
                centers_.push_back(x_left + c * len);
                radii_.push_back(r * len);
                lifetimes_.push_back(life * t_end);
            }
}

double TestFunctionFamily::value(std::size_t k, double x, double t) const {
    const double tau = lifetimes_[k];
    if (!(tau > 0.0) || t >= tau) return 0.0;
    return bump((x - centers_[k]) / radii_[k]) * bump(t / tau);
}

double TestFunctionFamily::gradient_bound(std::size_t k) const { return bump_slope_sup() / radii_[k]; }

DualNormPairing::DualNormPairing(const Grid& grid, double t_end)
    : grid_(&grid), family_(grid.domain_left, grid.domain_right, t_end), sums_(family_.size(), 0.0) {}

void DualNormPairing::add_level(const std::vector<double>& z, double t, double weight) {
    for (std::size_t j = 0; j < family_.size(); ++j) {
        double s = 0.0;
        for (std::size_t k = 0; k < z.size(); ++k)
            if (z[k] != 0.0) s += grid_->widths[k] * z[k] * family_.value(j, grid_->centers[k], t);
        sums_[j] += weight * s;
    }
}

double DualNormPairing::value() const {
    double best = 0.0;
    for (std::size_t j = 0; j < family_.size(); ++j)
        best = std::max(best, std::abs(sums_[j]) / family_.gradient_bound(j));
    return best;
}

double space_variation(const std::vector<double>& z) {
    double s = 0.0;
    for (std::size_t k = 1; k < z.size(); ++k) s += std::abs(z[k] - z[k - 1]);
    return s;
}

DiscreteNorms discrete_norms(const std::vector<std::vector<double>>& field, const Grid& grid,
                             const std::vector<double>& dts) {
    DiscreteNorms out;
    const std::size_t levels = field.size();
    if (levels == 0) return out;
    double t_end = 0.0;
    for (double d : dts) t_end += d;
    DualNormPairing pairing(grid, t_end > 0.0 ? t_end : 1.0);
    double t = 0.0;
    for (std::size_t n = 0; n < levels; ++n) {
        const double before = n > 0 && n - 1 < dts.size() ? dts[n - 1] : 0.0;
        const double after = n < dts.size() ? dts[n] : 0.0;
        const double weight = std::max(before, after);
        out.bv_space += weight * space_variation(field[n]);
        if (n + 1 < levels)
            for (std::size_t k = 0; k < field[n].size(); ++k)
                out.bv_time += grid.widths[k] * std::abs(field[n + 1][k] - field[n][k]);
        if (t_end > 0.0) pairing.add_level(field[n], t, weight);
        if (n < dts.size()) t += dts[n];
    }
    out.dual_norm_surrogate = pairing.value();
    return out;
}

DiscreteNorms discrete_norms(const std::vector<std::vector<double>>& field, const Grid& grid,
                             double dt) {
    const std::size_t steps = field.empty() ? 0 : field.size() - 1;
    std::vector<double> dts(std::max<std::size_t>(steps, 1), dt);
    return discrete_norms(field, grid, dts);
}

double entropy_cfl_dt(const Grid& grid, const State& s, const FluxSet& flux, const State& next,
                      const EntropyWeights& w) {
    const ConvexFunction fr = w.phi_rho();
    const ConvexFunction fe = w.phi_e();
    const std::size_t n = grid.n_cells();
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < n; ++k) {
        const double rho_mid = mean_value_point(fr, s.rho[k], next.rho[k]);
        const double e_mid = mean_value_point(fe, s.e[k], next.e[k]);
        const double e_taylor = taylor_point(fe, next.e[k], s.e[k]);
        double den_rho = 0.0, den_e = 0.0;
        // Incoming parts only: left face when u > 0, right face when u < 0.
        for (int side = 0; side < 2; ++side) {
            const std::size_t face = side == 0 ? k : k + 1;
            if (grid.is_boundary_face(face)) continue;
            const double u_out = side == 0 ? -s.u[face] : s.u[face];
            const double f_out = side == 0 ? -flux.mass_flux[face] : flux.mass_flux[face];
            const std::size_t nb = side == 0 ? k - 1 : k + 1;
            if (u_out < 0.0) {
                const double xi = taylor_point(fr, s.rho[k], s.rho[nb]);
                den_rho += fr.d2(rho_mid) * fr.d2(rho_mid) / fr.d2(xi) * (-u_out);
            }
            if (f_out < 0.0) {
                const double xi = taylor_point(fe, s.e[k], s.e[nb]);
                den_e += fe.d2(e_mid) * fe.d2(e_mid) / fe.d2(xi) * (-f_out);
            }
        }
        if (den_rho > 0.0) best = std::min(best, grid.widths[k] / den_rho);
        if (den_e > 0.0) best = std::min(best, fe.d2(e_taylor) * grid.widths[k] * next.rho[k] / den_e);
    }
    return best;
}

}  // namespace ieuler
