#pragma once

#include <vector>

#include "ieuler/convex.hpp"
#include "ieuler/flux.hpp"
#include "ieuler/grid.hpp"

namespace ieuler {

struct IdentityCell {
    double remainder = 0.0;       // phi'(z_new)[transport of z] - conservative transport of phi(z)
    double face_part = 0.0;       // sum_s F [phi'(z_new)(z_s - z_new) - phi(z_s) + phi(z_new)]
    double curvature_part = 0.0;  // remainder - face_part
    double lo = 0.0;              // bracket of |K| rho_old phi''(xi) (z_new - z_old)^2 / (2 dt)
    double hi = 0.0;
    bool inside = false;
};

struct IdentityReport {
    std::vector<IdentityCell> cells;
    bool all_inside = true;
};

/// Checks the renormalisation identity of the implicit convection operator cell by cell.
/// flux.mass_flux must carry rho_old to rho_new in one step of length dt, and
/// flux.e_face holds the face values of z. Throws DomainError otherwise.
IdentityReport convection_identity_check(const Grid& grid, const std::vector<double>& rho_old,
                                         const std::vector<double>& rho_new,
                                         const std::vector<double>& z_old,
                                         const std::vector<double>& z_new, const FluxSet& flux,
                                         double dt, const ConvexFunction& phi);

}  // namespace ieuler
