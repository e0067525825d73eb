#pragma once

#include <vector>

#include "ieuler/grid.hpp"
#include "ieuler/state.hpp"

namespace ieuler {

// The nonlinear correction step: mass and internal energy balances at the new level,
// and the velocity correction from the predicted velocity.
struct CorrectionProblem {
    const Grid& grid;
    const State& old_state;
    const std::vector<double>& u_tilde;
    const std::vector<double>& zeta;
    const std::vector<double>& rho_dual;
    const std::vector<double>& source;
    double dt;
    const SchemeConfig& cfg;
};

/// Pseudo-transient Newton in (ln rho, ln e, u) with a finite-difference Jacobian. rho, e, u hold the
/// initial guess and receive the root. Returns false if the residual could not be driven down.
bool newton_correction(const CorrectionProblem& prob, std::vector<double>& rho, std::vector<double>& e,
                       std::vector<double>& u, int max_iter);

}  // namespace ieuler
