#pragma once

#include <optional>
#include <vector>

#include "ieuler/grid.hpp"

namespace ieuler {

struct Primitive {
    double rho = 0.0;
    double u = 0.0;
    double p = 0.0;
};

// Cell arrays rho, e, p; face array u (rightward component, zero on walls).
struct State {
    std::vector<double> rho;
    std::vector<double> e;
    std::vector<double> p;
    std::vector<double> u;
    double time = 0.0;
};

enum class SchemeKind { pressure_correction, explicit_segregated };
enum class Reconstruction { upwind, muscl };

struct Stabilization {
    double q = 2.0;
    double alpha = 0.5;
};

struct SchemeConfig {
    double gamma = 1.4;
    SchemeKind scheme = SchemeKind::pressure_correction;
    Reconstruction reconstruction = Reconstruction::upwind;
    double cfl_fraction = 0.5;
    double end_time = 0.0;
    std::optional<Stabilization> stabilization;
    double picard_tol = 1e-10;
    int picard_max_iter = 100;
    bool corrective_source = true;

    /// Throws ConfigError on any violated invariant.
    void validate() const;
};

double eos_pressure(double rho, double e, double gamma);
double eos_energy_from_pressure(double rho, double p, double gamma);
double sound_speed(double rho, double p, double gamma);

/// Recomputes p from rho and e on every cell.
void close_state(State& s, double gamma);

State init_riemann(const Grid& grid, const Primitive& left, const Primitive& right, double x0,
                   double gamma);

struct Totals {
    double mass = 0.0;
    double energy = 0.0;
};

Totals totals(const State& s, const Grid& grid);

double internal_energy(const State& s, const Grid& grid);

/// Sum over faces of half |D| rho_D u^2 for a given dual density.
double dual_kinetic_energy(const Grid& grid, const std::vector<double>& rho_dual,
                           const std::vector<double>& u);

}  // namespace ieuler
