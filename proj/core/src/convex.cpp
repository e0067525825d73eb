#include "ieuler/convex.hpp"

#include <algorithm>
#include <cmath>

#include "ieuler/errors.hpp"

namespace ieuler {

double ConvexFunction::value(double z) const {
    switch (kind) {
        case ConvexKind::density_entropy: return z * std::log(z);
        case ConvexKind::energy_entropy: return -std::log(z) / (gamma - 1.0);
        case ConvexKind::square: return z * z;
        case ConvexKind::linear: return z;
    }
    return 0.0;
}

double ConvexFunction::d1(double z) const {
    switch (kind) {
        case ConvexKind::density_entropy: return std::log(z) + 1.0;
        case ConvexKind::energy_entropy: return -1.0 / ((gamma - 1.0) * z);
        case ConvexKind::square: return 2.0 * z;
        case ConvexKind::linear: return 1.0;
    }
    return 0.0;
}

double ConvexFunction::d2(double z) const {
    switch (kind) {
        case ConvexKind::density_entropy: return 1.0 / z;
        case ConvexKind::energy_entropy: return 1.0 / ((gamma - 1.0) * z * z);
        case ConvexKind::square: return 2.0;
        case ConvexKind::linear: return 0.0;
    }
    return 0.0;
}

double eta(double rho, double e, const EntropyWeights& w) {
    if (!(rho > 0.0) || !(e > 0.0)) throw DomainError("eta: rho and e must be positive");
    return rho * std::log(rho) - rho * std::log(e) / (w.gamma - 1.0);
}

double entropy_compatibility_residual(double rho, double e, const EntropyWeights& w) {
    const ConvexFunction fr = w.phi_rho();
    const ConvexFunction fe = w.phi_e();
    const double p = (w.gamma - 1.0) * rho * e;
    return rho * fr.d1(rho) - fr.value(rho) + fe.d1(e) * p;
}

double x_kl_bisection(const ConvexFunction& phi, double x_k, double x_l) {
    if (!phi.strictly_convex()) throw DomainError("x_kl: phi must be strictly convex");
    if (x_k == x_l) return x_k;
    const double fk = phi.value(x_k), dk = phi.d1(x_k);
    const double fl = phi.value(x_l), dl = phi.d1(x_l);
    auto gap = [&](double x) { return (fk - fl) + dk * (x - x_k) - dl * (x - x_l); };

    double lo = std::min(x_k, x_l);
    double hi = std::max(x_k, x_l);
    double g_lo = gap(lo);
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        const double g_mid = gap(mid);
        if (g_mid == 0.0) return mid;
        if ((g_mid > 0.0) == (g_lo > 0.0)) {
            lo = mid;
            g_lo = g_mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

namespace {

// (b - a) / ln(b / a), with a series in d = (b - a) / (b + a) when the two are close.
double log_mean(double a, double b) {
    const double m = 0.5 * (a + b);
    const double d = (b - a) / (b + a);
    if (std::abs(d) < 1e-3) {
        const double d2 = d * d;
        return m / (1.0 + d2 / 3.0 + d2 * d2 / 5.0);
    }
    return (b - a) / std::log(b / a);
}

}  // namespace

double x_kl(const ConvexFunction& phi, double x_k, double x_l) {
    if (x_k == x_l) {
        if (!phi.strictly_convex()) throw DomainError("x_kl: phi must be strictly convex");
        return x_k;
    }
    switch (phi.kind) {
        case ConvexKind::density_entropy: return log_mean(x_k, x_l);
        case ConvexKind::energy_entropy: return x_k * x_l / log_mean(x_k, x_l);
        case ConvexKind::square: return 0.5 * (x_k + x_l);
        case ConvexKind::linear: break;
    }
    throw DomainError("x_kl: phi must be strictly convex");
}

Interval admissible_interval(double z_k, double z_l, double z_kl, bool upwind_is_k) {
    const double lo_hull = std::min(z_k, z_l), hi_hull = std::max(z_k, z_l);
    if (z_kl < lo_hull || z_kl > hi_hull)
        throw NumericalError("admissible_interval: z_KL outside the hull of the cell values");
    const double up = upwind_is_k ? z_k : z_l;
    return {std::min(up, z_kl), std::max(up, z_kl)};
}

double invert_curvature(const ConvexFunction& phi, double target, double a, double b) {
    const double lo = std::min(a, b), hi = std::max(a, b);
    double z = 0.5 * (lo + hi);
    switch (phi.kind) {
        case ConvexKind::density_entropy: z = 1.0 / target; break;
        case ConvexKind::energy_entropy: z = 1.0 / std::sqrt((phi.gamma - 1.0) * target); break;
        case ConvexKind::square:
        case ConvexKind::linear: break;
    }
    return std::clamp(z, lo, hi);
}

namespace {
bool nearly_equal(double a, double b, double rel) {
    return std::abs(b - a) <= rel * std::max(std::abs(a), std::abs(b));
}
}  // namespace

double mean_value_point(const ConvexFunction& phi, double a, double b) {
    if (a == b || nearly_equal(a, b, 1e-9)) return 0.5 * (a + b);
    const double target = (phi.d1(b) - phi.d1(a)) / (b - a);
    return invert_curvature(phi, target, a, b);
}

double taylor_point(const ConvexFunction& phi, double a, double b) {
    if (a == b || nearly_equal(a, b, 1e-5)) return 0.5 * (a + b);
    const double d = b - a;
    const double target = 2.0 * (phi.value(b) - phi.value(a) - phi.d1(a) * d) / (d * d);
    return invert_curvature(phi, target, a, b);
}

}  // namespace ieuler
