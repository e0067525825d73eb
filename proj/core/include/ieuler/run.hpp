#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "ieuler/audit.hpp"
#include "ieuler/config.hpp"
#include "ieuler/grid.hpp"
#include "ieuler/riemann.hpp"
#include "ieuler/state.hpp"

namespace ieuler {

struct StepLog {
    std::size_t step = 0;
    double time = 0.0;
    double dt = 0.0;
    double mass = 0.0;
    double energy = 0.0;         // internal + kinetic
    double scheme_energy = 0.0;  // the quantity each scheme balances
    double global_entropy = 0.0;
    double max_entropy_residual = 0.0;  // relative to (|K|/dt) max|eta|
    double cfl_entropy_dt = 0.0;
    int picard_iterations = 0;
};

struct DiagnosticsReport {
    std::vector<StepLog> log;
    std::vector<std::vector<double>> residual_snapshots;
    std::vector<double> snapshot_times;
    RemainderAggregates aggregates;
    std::vector<BoundEntry> bounds;
    double max_entropy_residual = 0.0;
    bool entropy_decreasing = true;
    bool entropy_cfl_respected = true;
};

struct RunReport {
    RunConfig config;
    Grid grid;
    std::size_t window_begin = 0;
    std::size_t window_end = 0;
    State initial;
    State final_state;
    std::vector<State> captures;
    DiagnosticsReport diagnostics;
    std::size_t steps = 0;
    double l1_rho_error = 0.0;
    double linf_rho_error = 0.0;
    // Largest per-step relative change of the mass and of the balanced energy.
    double max_mass_drift = 0.0;
    double max_energy_drift = 0.0;
    // Explicit scheme only: per-step change of internal + kinetic energy.
    double max_raw_energy_drift = 0.0;
    double wall_seconds = 0.0;
    bool failed = false;
    std::string failure;
};

/// Cells added on each side for the configured padding; automatic padding covers the
/// distance travelled by the fastest wall-generated signal, and is zero for a fluid at rest.
std::pair<std::size_t, std::size_t> padding_cells(const RunConfig& cfg);

RunReport run_case(const RunConfig& cfg);

/// Exact solution sampled at the window cell centres.
std::vector<Primitive> exact_on_window(const RunReport& report);

/// sum |K| |rho_K - rho_exact(x_K)| over the window.
double l1_density_error(const RunReport& report);

}  // namespace ieuler
