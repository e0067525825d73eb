#pragma once

#include <optional>
#include <vector>

#include "ieuler/flux.hpp"
#include "ieuler/grid.hpp"
#include "ieuler/state.hpp"

namespace ieuler {

// Two consecutive levels plus the mass fluxes that produced the current one.
// Without fluxes (first step) the prediction sees no convection.
struct PcHistory {
    State previous;
    State current;
    std::optional<FluxSet> current_flux;
    double previous_dt = 0.0;

    static PcHistory bootstrap(const State& s, double dt);
};

struct Prediction {
    std::vector<double> u_tilde;
    std::vector<double> zeta;
    std::vector<double> rho_dual_current;
    std::vector<double> rho_dual_previous;
    std::vector<double> dual_flux;  // empty at bootstrap
};

/// Implicit upwind convection on the dual mesh, explicit weighted pressure gradient.
Prediction predict_velocity(const Grid& grid, const PcHistory& history, double dt);

/// Convenience form with no convection history.
Prediction predict_velocity(const Grid& grid, const State& state_prev, const State& state_curr,
                            double dt);

/// Kinetic energy removed by the prediction, dispatched to cells (per unit volume and time).
/// dual_flux may be empty, leaving only the time-derivative part.
std::vector<double> corrective_source_pc(const Grid& grid, const std::vector<double>& u_tilde,
                                         const std::vector<double>& u_prev,
                                         const std::vector<double>& rho_dual_prev,
                                         const std::vector<double>& dual_flux, double dt);

struct CorrectionResult {
    State next;
    FluxSet flux;
    std::vector<double> source;
    int iterations = 0;
    double residual = 0.0;
    bool fully_implicit_energy = false;
};

CorrectionResult correction_solve(const Grid& grid, const State& state_curr,
                                  const Prediction& prediction, double dt, const SchemeConfig& cfg);

struct PcStepRecord {
    std::vector<double> u_tilde;
    std::vector<double> zeta;
    std::vector<double> S;
    int picard_iters = 0;
    double picard_residual = 0.0;
    double energy_before = 0.0;  // internal + lagged kinetic + pressure term, level n
    double energy_after = 0.0;   // same quantity at level n+1
};

struct PcStepResult {
    State next;
    FluxSet flux;
    PcStepRecord record;
};

PcStepResult step_pc(const Grid& grid, const PcHistory& history, double dt, const SchemeConfig& cfg);

/// Shifts the history by one level after a successful step.
PcHistory advance_history(const PcHistory& history, PcStepResult&& step, double dt);

/// Internal energy + sum 1/2 |D| rho_lag u^2 + sum |D| dt_squared/(2 rho_lag) (grad p)^2.
/// Before a step dt_squared is dt times the previous step, after it dt^2.
double pc_energy(const Grid& grid, const State& s, const std::vector<double>& rho_dual_lagged,
                 double dt_squared);

}  // namespace ieuler
