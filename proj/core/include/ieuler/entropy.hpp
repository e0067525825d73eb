#pragma once

#include <vector>

#include "ieuler/convex.hpp"
#include "ieuler/flux.hpp"
#include "ieuler/grid.hpp"
#include "ieuler/state.hpp"

namespace ieuler {

enum class TimeLevel { implicit_level, explicit_level };

/// (|K|/dt)(eta_new - eta_old) + sum over faces of eta(rho_face, e_face) u_{K,s},
/// with u taken from the new state (implicit) or the old one (explicit).
std::vector<double> entropy_residual_field(const Grid& grid, const State& state_old,
                                           const State& state_new, const FluxSet& flux, double dt,
                                           const EntropyWeights& w, TimeLevel level);

double global_entropy(const State& s, const Grid& grid, const EntropyWeights& w);

// Sixteen bump products b((x - c)/r) * b(t / tau) with compact support in
// (x_left, x_right) x [0, t_end), used to estimate the weak dual norm from below.
class TestFunctionFamily {
public:
    TestFunctionFamily(double x_left, double x_right, double t_end);

    std::size_t size() const noexcept { return centers_.size(); }
    double value(std::size_t k, double x, double t) const;
    /// Sup norm of the spatial derivative of function k.
    double gradient_bound(std::size_t k) const;

private:
    std::vector<double> centers_;
    std::vector<double> radii_;
    std::vector<double> lifetimes_;
};

/// max over the family of |sum_n w_n sum_K |K| z_K^n psi(x_K, t_n)| / |grad psi|.
class DualNormPairing {
public:
    DualNormPairing(const Grid& grid, double t_end);
    void add_level(const std::vector<double>& z, double t, double weight);
    double value() const;

private:
    const Grid* grid_;
    TestFunctionFamily family_;
    std::vector<double> sums_;
};

struct DiscreteNorms {
    double bv_time = 0.0;
    double bv_space = 0.0;
    double dual_norm_surrogate = 0.0;
};

/// field[n][K] for levels n = 0..N, all separated by dt.
DiscreteNorms discrete_norms(const std::vector<std::vector<double>>& field, const Grid& grid,
                             double dt);

/// Variable steps: dts[n] separates level n from level n+1. Level n is weighted by
/// the larger of its two adjacent steps.
DiscreteNorms discrete_norms(const std::vector<std::vector<double>>& field, const Grid& grid,
                             const std::vector<double>& dts);

double space_variation(const std::vector<double>& z);

/// Largest dt satisfying both entropy CFL conditions of the explicit upwind scheme.
double entropy_cfl_dt(const Grid& grid, const State& state, const FluxSet& flux,
                      const State& state_next, const EntropyWeights& w);

}  // namespace ieuler
