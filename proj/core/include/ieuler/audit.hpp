#pragma once

#include <string>
#include <vector>

#include "ieuler/convex.hpp"
#include "ieuler/entropy.hpp"
#include "ieuler/flux.hpp"
#include "ieuler/grid.hpp"
#include "ieuler/state.hpp"

namespace ieuler {

struct BoundEntry {
    std::string name;
    double measured = 0.0;
    double bound = 0.0;
    bool applies = true;

    double ratio() const { return bound > 0.0 ? measured / bound : (measured > 0.0 ? 1e300 : 0.0); }
    bool holds() const { return !applies || measured <= bound * (1.0 + 1e-12) + 1e-300; }
};

// Everything the remainder bounds need, accumulated over a run.
struct RemainderAggregates {
    SchemeKind scheme = SchemeKind::pressure_correction;
    Reconstruction reconstruction = Reconstruction::upwind;
    std::size_t steps = 0;
    double dual_norm_mass = 0.0;
    double dual_norm_energy = 0.0;
    double dual_norm_total = 0.0;
    double l1_time_mass = 0.0;
    double l1_time_energy = 0.0;
    double l1_upwind = 0.0;
    bool entropy_cfl_respected = true;
    double bv_space_rho = 0.0;
    double bv_space_e = 0.0;
    double bv_time_rho = 0.0;
    double bv_time_e = 0.0;
    double q = 2.0;
    double velocity_norm_q = 0.0;
    double velocity_norm_q_conjugate = 0.0;
    double velocity_seminorm_q_power = 0.0;  // sum_n dt sum_K |K| |Du|^q
    double dt_max = 0.0;
    double measured_M = 1.0;
};

class RunAuditor {
public:
    RunAuditor(const Grid& grid, const SchemeConfig& cfg, double t_end);

    void start(const State& s0);
    /// flux: the fluxes of the step (final iterate for the pressure correction scheme,
    /// time-n fluxes for the explicit one).
    void observe(const State& old_state, const State& new_state, const FluxSet& flux, double dt);
    RemainderAggregates aggregates() const;

private:
    void add_level(const State& s);
    void update_bound(const State& s);

    const Grid* grid_;
    SchemeConfig cfg_;
    EntropyWeights weights_;
    double q_;
    double time_ = 0.0;
    DualNormPairing mass_, energy_, total_;
    std::vector<double> dts_;
    std::vector<double> sv_rho_, sv_e_, vel_q_, vel_qc_;
    RemainderAggregates agg_;
};

/// Right sides of the remainder estimates for the measured M, next to the measured values.
std::vector<BoundEntry> theorem_bound_audit(const RemainderAggregates& agg, const EntropyWeights& w,
                                            const MeshMetrics& metrics, double M);

}  // namespace ieuler
