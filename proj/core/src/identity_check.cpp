#include "ieuler/identity_check.hpp"

#include <algorithm>
#include <cmath>

#include "ieuler/errors.hpp"

namespace ieuler {

IdentityReport convection_identity_check(const Grid& grid, const std::vector<double>& rho_old,
                                         const std::vector<double>& rho_new,
                                         const std::vector<double>& z_old,
                                         const std::vector<double>& z_new, const FluxSet& flux,
                                         double dt, const ConvexFunction& phi) {
    const std::size_t n = grid.n_cells();
    const auto& F = flux.mass_flux;
    const auto& zf = flux.e_face;

    for (std::size_t k = 0; k < n; ++k) {
        const double h = grid.widths[k];
        const double r = h / dt * (rho_new[k] - rho_old[k]) + F[k + 1] - F[k];
        const double scale = h / dt * std::max(rho_new[k], rho_old[k]) + std::abs(F[k + 1]) + std::abs(F[k]);
        if (std::abs(r) > 1e-10 * scale)
            throw DomainError("convection_identity_check: densities do not satisfy the mass balance");
    }

    IdentityReport rep;
    rep.cells.resize(n);
    for (std::size_t k = 0; k < n; ++k) {
        const double h = grid.widths[k];
        const double zn = z_new[k], zo = z_old[k];
        const double d1 = phi.d1(zn);
        double transport = h / dt * (rho_new[k] * zn - rho_old[k] * zo);
        double conservative = h / dt * (rho_new[k] * phi.value(zn) - rho_old[k] * phi.value(zo));
        double face = 0.0, magnitude = std::abs(d1 * transport) + std::abs(conservative);
        for (int side = 0; side < 2; ++side) {
            const std::size_t i = side == 0 ? k : k + 1;
            const double out = side == 0 ? -F[i] : F[i];
            if (out == 0.0) continue;
            transport += out * zf[i];
            conservative += out * phi.value(zf[i]);
            face += out * (d1 * (zf[i] - zn) - phi.value(zf[i]) + phi.value(zn));
            magnitude += std::abs(out) * (std::abs(d1 * zf[i]) + std::abs(phi.value(zf[i])) + std::abs(phi.value(zn)));
        }
        IdentityCell& c = rep.cells[k];
        c.remainder = d1 * transport - conservative;
        c.face_part = face;
        c.curvature_part = c.remainder - face;
        const double w = 0.5 * h / dt * rho_old[k] * (zn - zo) * (zn - zo);
        const double c1 = phi.d2(std::min(zn, zo)), c2 = phi.d2(std::max(zn, zo));
        c.lo = w * std::min(c1, c2);
        c.hi = w * std::max(c1, c2);
        const double slack = 1e-11 * magnitude;
        c.inside = c.curvature_part >= c.lo - slack && c.curvature_part <= c.hi + slack;
        rep.all_inside = rep.all_inside && c.inside;
    }
    return rep;
}

}  // namespace ieuler
