#pragma once

#include <array>
#include <string>
#include <vector>

#include "ieuler/state.hpp"

namespace ieuler {

enum class WaveKind { shock, rarefaction };

struct RiemannSolution {
    Primitive left;
    Primitive right;
    double gamma = 1.4;
    double p_star = 0.0;
    double u_star = 0.0;
    double rho_star_left = 0.0;
    double rho_star_right = 0.0;
    WaveKind left_wave = WaveKind::rarefaction;
    WaveKind right_wave = WaveKind::rarefaction;

    /// Self-similar state at xi = (x - x0) / t.
    Primitive sample(double xi) const;

    /// Speeds bounding the constant regions, left to right: head and tail of the
    /// left wave (equal for a shock), contact, tail and head of the right wave.
    std::array<double, 5> wave_speeds() const;
};

/// Exact solution of the ideal-gas Riemann problem; throws VacuumError.
RiemannSolution solve_riemann(const Primitive& left, const Primitive& right, double gamma);

Primitive exact_riemann(const Primitive& left, const Primitive& right, double gamma, double xi);

/// s [q] - [f(q)] for mass, momentum and total energy.
std::array<double, 3> rankine_hugoniot_residual(const Primitive& left, const Primitive& right,
                                                double s, double gamma);

struct RiemannPreset {
    std::string name;
    Primitive left;
    Primitive right;
    double gamma = 1.4;
    double x0 = 0.5;
    double end_time = 0.0;
    double domain_left = 0.0;
    double domain_right = 1.0;
};

/// "sod" or "toro-test5"; throws ConfigError otherwise.
RiemannPreset find_preset(const std::string& name);
std::vector<std::string> preset_names();

}  // namespace ieuler
