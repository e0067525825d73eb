#pragma once

namespace ieuler {

enum class ConvexKind { density_entropy, energy_entropy, square, linear };

// The scalar functions entering the entropy pair, plus two model functions
// used by the identity checks.
struct ConvexFunction {
    ConvexKind kind = ConvexKind::square;
    double gamma = 1.4;

    static ConvexFunction density(double gamma) { return {ConvexKind::density_entropy, gamma}; }
    static ConvexFunction energy(double gamma) { return {ConvexKind::energy_entropy, gamma}; }
    static ConvexFunction square() { return {ConvexKind::square, 1.4}; }
    static ConvexFunction linear() { return {ConvexKind::linear, 1.4}; }

    double value(double z) const;
    double d1(double z) const;
    double d2(double z) const;
    bool strictly_convex() const noexcept { return kind != ConvexKind::linear; }
};

struct EntropyWeights {
    double gamma = 1.4;

    ConvexFunction phi_rho() const { return ConvexFunction::density(gamma); }
    ConvexFunction phi_e() const { return ConvexFunction::energy(gamma); }
};

/// rho ln rho - rho ln(e) / (gamma - 1).
double eta(double rho, double e, const EntropyWeights& w);

/// rho phi_rho'(rho) - phi_rho(rho) + phi_e'(e) p, which vanishes identically.
double entropy_compatibility_residual(double rho, double e, const EntropyWeights& w);

/// Abscissa where the tangents of phi at x_K and x_L intersect. Closed forms for the
/// supported functions: logarithmic mean for phi_rho, x_K x_L over it for phi_e.
double x_kl(const ConvexFunction& phi, double x_k, double x_l);

/// Same point found by bisection on the tangent gap; works for any strictly convex phi.
double x_kl_bisection(const ConvexFunction& phi, double x_k, double x_l);

struct Interval {
    double lo = 0.0;
    double hi = 0.0;
    bool contains(double z, double slack = 0.0) const noexcept {
        return z >= lo - slack && z <= hi + slack;
    }
};

/// Closed interval between the upwind value and z_KL.
Interval admissible_interval(double z_k, double z_l, double z_kl, bool upwind_is_k);

/// xi in [[a, b]] with phi''(xi) (b - a) = phi'(b) - phi'(a).
double mean_value_point(const ConvexFunction& phi, double a, double b);

/// xi in [[a, b]] with phi''(xi) (b - a)^2 / 2 = phi(b) - phi(a) - phi'(a) (b - a).
double taylor_point(const ConvexFunction& phi, double a, double b);

/// Solves phi''(xi) = target, clamped to [[a, b]].
double invert_curvature(const ConvexFunction& phi, double target, double a, double b);

}  // namespace ieuler
