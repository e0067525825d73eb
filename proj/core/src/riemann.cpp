#include "ieuler/riemann.hpp"

#include <algorithm>
#include <cmath>

#include "ieuler/errors.hpp"

namespace ieuler {

namespace {

struct Side {
    double rho, u, p, c, a, b;
};

Side make_side(const Primitive& w, double g) {
    return {w.rho, w.u, w.p, std::sqrt(g * w.p / w.rho), 2.0 / ((g + 1.0) * w.rho), (g - 1.0) / (g + 1.0) * w.p};
}

// Pressure function of one side and its derivative.
void side_function(const Side& s, double p, double g, double& f, double& df) {
    if (p > s.p) {
        const double q = std::sqrt(s.a / (p + s.b));
        f = (p - s.p) * q;
        df = q * (1.0 - 0.5 * (p - s.p) / (p + s.b));
    } else {
        const double r = p / s.p;
        f = 2.0 * s.c / (g - 1.0) * (std::pow(r, (g - 1.0) / (2.0 * g)) - 1.0);
        df = 1.0 / (s.rho * s.c) * std::pow(r, -(g + 1.0) / (2.0 * g));
    }
}

}  // namespace

RiemannSolution solve_riemann(const Primitive& left, const Primitive& right, double g) {
    if (!(left.rho > 0.0 && left.p > 0.0 && right.rho > 0.0 && right.p > 0.0))
        throw DomainError("riemann: densities and pressures must be positive");
    const Side L = make_side(left, g), R = make_side(right, g);
    const double du = R.u - L.u;
    if (2.0 * (L.c + R.c) / (g - 1.0) <= du) throw VacuumError("riemann: initial data generate vacuum");

    auto total = [&](double p, double& df) {
        double fl, dfl, fr, dfr;
        side_function(L, p, g, fl, dfl);
        side_function(R, p, g, fr, dfr);
        df = dfl + dfr;
        return fl + fr + du;
    };

    // Bracket: the pressure function is increasing in p.
    double lo = 0.0, hi = 10.0 * std::max(L.p, R.p), dummy;
    while (total(hi, dummy) < 0.0) hi *= 10.0;

    const double z = (g - 1.0) / (2.0 * g);
    double p = std::pow((L.c + R.c - 0.5 * (g - 1.0) * du) / (L.c / std::pow(L.p, z) + R.c / std::pow(R.p, z)), 1.0 / z);
    if (!(p > lo && p < hi)) p = 0.5 * (lo + hi);

    for (int it = 0; it < 200; ++it) {
        double df;
        const double f = total(p, df);
        if (f > 0.0) hi = p;
        else lo = p;
        double next = p - f / df;
        if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
        const double change = std::abs(next - p) / (0.5 * (next + p));
        p = next;
        if (change < 1e-14 || hi - lo < 1e-15 * hi) break;
    }

    RiemannSolution s;
    s.left = left;
    s.right = right;
    s.gamma = g;
    s.p_star = p;
    double fl, fr, d;
    side_function(L, p, g, fl, d);
    side_function(R, p, g, fr, d);
    s.u_star = 0.5 * (L.u + R.u) + 0.5 * (fr - fl);
    const double gr = (g - 1.0) / (g + 1.0);
    auto star_density = [&](const Primitive& w, WaveKind& kind) {
        const double r = p / w.p;
        if (p > w.p) {
            kind = WaveKind::shock;
            return w.rho * (r + gr) / (gr * r + 1.0);
        }
        kind = WaveKind::rarefaction;
        return w.rho * std::pow(r, 1.0 / g);
    };
    s.rho_star_left = star_density(left, s.left_wave);
    s.rho_star_right = star_density(right, s.right_wave);
    return s;
}

std::array<double, 5> RiemannSolution::wave_speeds() const {
    const double g = gamma;
    const double cl = std::sqrt(g * left.p / left.rho), cr = std::sqrt(g * right.p / right.rho);
    std::array<double, 5> w{};
    if (left_wave == WaveKind::shock) {
        const double sl = left.u - cl * std::sqrt((g + 1.0) / (2.0 * g) * p_star / left.p + (g - 1.0) / (2.0 * g));
        w[0] = w[1] = sl;
    } else {
        w[0] = left.u - cl;
        w[1] = u_star - cl * std::pow(p_star / left.p, (g - 1.0) / (2.0 * g));
    }
    w[2] = u_star;
    if (right_wave == WaveKind::shock) {
        const double sr = right.u + cr * std::sqrt((g + 1.0) / (2.0 * g) * p_star / right.p + (g - 1.0) / (2.0 * g));
        w[3] = w[4] = sr;
    } else {
        w[3] = u_star + cr * std::pow(p_star / right.p, (g - 1.0) / (2.0 * g));
        w[4] = right.u + cr;
    }
    return w;
}

Primitive RiemannSolution::sample(double xi) const {
    const double g = gamma;
    const auto w = wave_speeds();
    if (xi <= w[2]) {
        if (xi < w[0]) return left;
        if (xi >= w[1]) return {rho_star_left, u_star, p_star};
        // Inside the left rarefaction fan.
        const double cl = std::sqrt(g * left.p / left.rho);
        const double k = 2.0 / (g + 1.0) + (g - 1.0) / ((g + 1.0) * cl) * (left.u - xi);
        return {left.rho * std::pow(k, 2.0 / (g - 1.0)),
                2.0 / (g + 1.0) * (cl + 0.5 * (g - 1.0) * left.u + xi),
                left.p * std::pow(k, 2.0 * g / (g - 1.0))};
    }
    if (xi > w[4]) return right;
    if (xi <= w[3]) return {rho_star_right, u_star, p_star};
    const double cr = std::sqrt(g * right.p / right.rho);
    const double k = 2.0 / (g + 1.0) - (g - 1.0) / ((g + 1.0) * cr) * (right.u - xi);
    return {right.rho * std::pow(k, 2.0 / (g - 1.0)),
            2.0 / (g + 1.0) * (-cr + 0.5 * (g - 1.0) * right.u + xi),
            right.p * std::pow(k, 2.0 * g / (g - 1.0))};
}

Primitive exact_riemann(const Primitive& left, const Primitive& right, double gamma, double xi) {
    return solve_riemann(left, right, gamma).sample(xi);
}

std::array<double, 3> rankine_hugoniot_residual(const Primitive& l, const Primitive& r, double s,
                                                double g) {
    auto cons = [g](const Primitive& w) {
        const double energy = w.p / (g - 1.0) + 0.5 * w.rho * w.u * w.u;
        return std::array<double, 3>{w.rho, w.rho * w.u, energy};
    };
    auto flux = [g](const Primitive& w) {
        const double energy = w.p / (g - 1.0) + 0.5 * w.rho * w.u * w.u;
        return std::array<double, 3>{w.rho * w.u, w.rho * w.u * w.u + w.p, w.u * (energy + w.p)};
    };
    const auto ql = cons(l), qr = cons(r), fl = flux(l), fr = flux(r);
    return {s * (qr[0] - ql[0]) - (fr[0] - fl[0]), s * (qr[1] - ql[1]) - (fr[1] - fl[1]),
            s * (qr[2] - ql[2]) - (fr[2] - fl[2])};
}

RiemannPreset find_preset(const std::string& name) {
    if (name == "sod") return {"sod", {1.0, 0.0, 1.0}, {0.125, 0.0, 0.1}, 1.4, 0.5, 0.2, 0.0, 1.0};
    if (name == "toro-test5")
        return {"toro-test5", {5.99924, 19.5975, 460.894}, {5.99242, -6.19633, 46.0950}, 1.4, 0.5, 0.035, 0.0, 1.0};
    throw ConfigError("unknown preset '" + name + "'");
}

std::vector<std::string> preset_names() { return {"sod", "toro-test5"}; }

}  // namespace ieuler
