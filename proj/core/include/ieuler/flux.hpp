#pragma once

#include <array>
#include <vector>

#include "ieuler/convex.hpp"
#include "ieuler/grid.hpp"
#include "ieuler/state.hpp"

namespace ieuler {

// Face arrays have n+1 entries (walls included, wall fluxes are zero and
// wall face values copy the adjacent cell). dual_flux lives at cell centres.
struct FluxSet {
    std::vector<double> rho_face;
    std::vector<double> e_face;
    std::vector<double> mass_flux;
    std::vector<double> rho_dual;
    std::vector<double> dual_flux;
};

double upwind_face_value(double z_k, double z_l, double u_face);

double minmod(double a, double b);

/// stencil = {z[K-1], z[K], z[L], z[L+1]} around the face K|L.
double muscl_face_value(const std::array<double, 4>& stencil, double u_face, double z_kl);

std::vector<double> face_values(const std::vector<double>& z, const std::vector<double>& u,
                                Reconstruction rec, const ConvexFunction& phi);

std::vector<double> dual_densities(const Grid& grid, const std::vector<double>& rho);

/// Flux through the dual face at the centre of each cell, half the sum of its primal faces.
std::vector<double> dual_fluxes(const std::vector<double>& mass_flux);

FluxSet assemble_mass_fluxes(const State& s, const Grid& grid, Reconstruction rec,
                             const EntropyWeights& w);

/// Builds rho_dual and dual_flux once rho_face, e_face and mass_flux are known.
void finish_flux_set(FluxSet& f, const Grid& grid, const std::vector<double>& rho);

std::vector<double> dual_mass_balance_residual(const Grid& grid, const FluxSet& flux_old,
                                               const State& state_old, const State& state_new,
                                               double dt);

}  // namespace ieuler
