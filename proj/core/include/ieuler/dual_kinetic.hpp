#pragma once

#include <vector>

#include "ieuler/grid.hpp"

namespace ieuler {

// Kinetic energy lost on each dual cell during a momentum step, as a rate
// (energy per unit time, already multiplied by |D|):
//
//   |D| rho_old (v_new - v_old)^2 / (2 dt) - 1/2 sum_f G_f (v_new - v_f)^2
//
// with G_f the outgoing dual mass flux and v_f the upwind value of
// v_convected across dual face f. An empty dual_flux drops the sum.
std::vector<double> dual_kinetic_remainder(const Grid& grid, const std::vector<double>& rho_old,
                                           const std::vector<double>& v_old,
                                           const std::vector<double>& v_new,
                                           const std::vector<double>& v_convected,
                                           const std::vector<double>& dual_flux, double dt);

/// Sends half of each dual-cell amount to each neighbouring cell (all of it for
/// wall dual cells) and divides by |K|.
std::vector<double> dispatch_to_cells(const Grid& grid, const std::vector<double>& per_dual_cell);

}  // namespace ieuler
