#pragma once

#include <vector>

#include "ieuler/flux.hpp"
#include "ieuler/grid.hpp"
#include "ieuler/state.hpp"

namespace ieuler {

// Kinetic energy dissipated by the previous momentum step, per unit volume and
// time, injected into the next internal energy balance.
struct ExplicitCarry {
    std::vector<double> source_rate;
    double dt = 0.0;
};

struct ExpStepRecord {
    std::vector<double> S;
    double cfl_used = 0.0;              // dt relative to the advective limit
    double stabilization_energy = 0.0;  // work of the stabilization term over the step
    double injected_energy = 0.0;       // dt sum |K| S
    double withheld_energy = 0.0;       // dt sum |D| R of this momentum step
    double pressure_work_old = 0.0;     // dt sum_K p^n (div u^n)
    double pressure_work_new = 0.0;     // dt sum_K p^{n+1} (div u^{n+1})
};

struct ExpStepResult {
    State next;
    FluxSet flux;  // time-n fluxes used by the step
    ExpStepRecord record;
    ExplicitCarry carry;
};

enum class CflPolicy { enforce, ignore };

struct ExplicitLimits {
    double advective = 0.0;
    double primal_mass = 0.0;
    double dual_mass = 0.0;
    double energy = 0.0;
    double min() const;
};

/// Unscaled step limits for the state and its time-n fluxes.
ExplicitLimits explicit_limits(const Grid& grid, const State& s, const FluxSet& flux, double gamma);

/// cfl_fraction times the smallest limit.
double explicit_dt_limit(const Grid& grid, const State& s, const SchemeConfig& cfg);

ExpStepResult step_explicit(const Grid& grid, const State& s, const ExplicitCarry& carry, double dt,
                            const SchemeConfig& cfg, CflPolicy policy = CflPolicy::enforce);

/// Convenience form without a carried source.
ExpStepResult step_explicit(const Grid& grid, const State& s, double dt, const SchemeConfig& cfg,
                            CflPolicy policy = CflPolicy::enforce);

/// Kinetic energy dissipated by the momentum update old -> new, dispatched to cells.
std::vector<double> corrective_source_explicit(const Grid& grid, const State& state_old,
                                               const State& state_new, const FluxSet& flux,
                                               double dt);

/// h^alpha (phi(Du_K) - phi(Du_{K-1})) / |D| with phi(g) = |g|^{q-2} g, Du_K = (u_{K+1} - u_K)/h_K.
std::vector<double> stabilization_term(const std::vector<double>& u, const Grid& grid, double q,
                                       double alpha);

}  // namespace ieuler
