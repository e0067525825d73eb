#include "ieuler/dual_kinetic.hpp"

namespace ieuler {

std::vector<double> dual_kinetic_remainder(const Grid& grid, const std::vector<double>& rho_old,
                                           const std::vector<double>& v_old,
                                           const std::vector<double>& v_new,
                                           const std::vector<double>& v_convected,
                                           const std::vector<double>& dual_flux, double dt) {
    const std::size_t n = grid.n_cells();
    std::vector<double> r(n + 1, 0.0);
    const bool convective = !dual_flux.empty();
    for (std::size_t i = 0; i <= n; ++i) {
        const double dv = v_new[i] - v_old[i];
        double val = grid.dual_volume(i) * rho_old[i] * dv * dv / (2.0 * dt);
        if (convective) {
            if (i < n) {
                const double g = dual_flux[i];
                const double vf = g >= 0.0 ? v_convected[i] : v_convected[i + 1];
                val -= 0.5 * g * (v_new[i] - vf) * (v_new[i] - vf);
            }
            if (i > 0) {
                const double g = -dual_flux[i - 1];
                const double vf = g >= 0.0 ? v_convected[i] : v_convected[i - 1];
                val -= 0.5 * g * (v_new[i] - vf) * (v_new[i] - vf);
            }
        }
        r[i] = val;
    }
    return r;
}

std::vector<double> dispatch_to_cells(const Grid& grid, const std::vector<double>& d) {
    const std::size_t n = grid.n_cells();
    std::vector<double> s(n);
    for (std::size_t k = 0; k < n; ++k) {
        const double left = k == 0 ? d[0] : 0.5 * d[k];
        const double right = k + 1 == n ? d[n] : 0.5 * d[k + 1];
        s[k] = (left + right) / grid.widths[k];
    }
    return s;
}

}  // namespace ieuler
