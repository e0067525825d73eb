#include "ieuler/run.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <optional>

#include "ieuler/entropy.hpp"
#include "ieuler/errors.hpp"
#include "ieuler/flux.hpp"
#include "ieuler/scheme_explicit.hpp"
#include "ieuler/scheme_pc.hpp"

namespace ieuler {

namespace {

constexpr int max_retries = 4;

double advective_limit(const Grid& grid, const State& s, double gamma) {
    double dt = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < grid.n_cells(); ++k) {
        const double speed = std::max(std::abs(s.u[k]), std::abs(s.u[k + 1])) + sound_speed(s.rho[k], s.p[k], gamma);
        dt = std::min(dt, grid.widths[k] / speed);
    }
    return dt;
}

double side_padding(double requested, const Primitive& side, double gamma, double end_time) {
    if (requested >= 0.0) return requested;
    if (side.u == 0.0) return 0.0;
    return 1.1 * end_time * (std::abs(side.u) + sound_speed(side.rho, side.p, gamma));
}

double max_abs(const std::vector<double>& v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

std::vector<double> eta_field(const State& s, const EntropyWeights& w) {
    std::vector<double> out(s.rho.size());
    for (std::size_t k = 0; k < out.size(); ++k) out[k] = eta(s.rho[k], s.e[k], w);
    return out;
}

}  // namespace

std::pair<std::size_t, std::size_t> padding_cells(const RunConfig& cfg) {
    const double h = (cfg.domain_right - cfg.domain_left) / static_cast<double>(cfg.n_cells);
    const double T = cfg.scheme.end_time;
    const double pl = side_padding(cfg.padding_left, cfg.left, cfg.scheme.gamma, T);
    const double pr = side_padding(cfg.padding_right, cfg.right, cfg.scheme.gamma, T);
    return {static_cast<std::size_t>(std::ceil(pl / h - 1e-9)), static_cast<std::size_t>(std::ceil(pr / h - 1e-9))};
}

RunReport run_case(const RunConfig& cfg) {
    cfg.validate();
    const auto t0 = std::chrono::steady_clock::now();
    RunReport rep;
    rep.config = cfg;

    const auto [nl, nr] = padding_cells(cfg);
    const double h = (cfg.domain_right - cfg.domain_left) / static_cast<double>(cfg.n_cells);
    rep.grid = build_uniform_grid(cfg.domain_left - h * static_cast<double>(nl),
                                  cfg.domain_right + h * static_cast<double>(nr), cfg.n_cells + nl + nr);
    rep.window_begin = nl;
    rep.window_end = nl + cfg.n_cells;
    const Grid& grid = rep.grid;
    const SchemeConfig& sc = cfg.scheme;
    const EntropyWeights w{sc.gamma};
    const double T = sc.end_time;

    State s = init_riemann(grid, cfg.left, cfg.right, cfg.x0, sc.gamma);
    rep.initial = s;

    std::optional<RunAuditor> auditor;
    if (cfg.theorem_audits) {
        auditor.emplace(grid, sc, T);
        auditor->start(s);
    }

    const bool pc = sc.scheme == SchemeKind::pressure_correction;
    std::optional<PcHistory> history;
    ExplicitCarry carry;
    DiagnosticsReport& diag = rep.diagnostics;
    double previous_entropy = global_entropy(s, grid, w);

    auto choose_dt = [&](const State& st) {
        if (cfg.fixed_dt) return *cfg.fixed_dt;
        if (cfg.dt_over_h) return *cfg.dt_over_h * h;
        if (pc) return sc.cfl_fraction * advective_limit(grid, st, sc.gamma);
        return explicit_dt_limit(grid, st, sc);
    };

    std::vector<double> stops = cfg.capture_times;
    std::sort(stops.begin(), stops.end());
    stops.erase(std::remove_if(stops.begin(), stops.end(), [&](double t) { return !(t > 0.0 && t < T); }), stops.end());
    std::size_t next_stop = 0;

    std::size_t step = 0;
    while (s.time < T * (1.0 - 1e-12)) {
        const double target = next_stop < stops.size() ? stops[next_stop] : T;
        double dt = choose_dt(s);
        if (s.time + dt >= target * (1.0 - 1e-12)) dt = target - s.time;
        if (!(dt > 0.0) || !std::isfinite(dt)) {
            rep.failed = true;
            rep.failure = "time step collapsed";
            break;
        }

        State next;
        FluxSet flux;
        double balanced_before = 0.0, balanced_after = 0.0, raw_drift = 0.0;
        int picard = 0;
        const Totals before = totals(s, grid);
        const bool adaptive = !cfg.fixed_dt && !cfg.dt_over_h;
        bool done = false;
        for (int attempt = 0; !done; ++attempt) try {
            if (pc) {
                if (!history) history = PcHistory::bootstrap(s, dt);
                PcStepResult r = step_pc(grid, *history, dt, sc);
                next = r.next;
                flux = r.flux;
                picard = r.record.picard_iters;
                balanced_before = r.record.energy_before;
                balanced_after = r.record.energy_after;
                history = advance_history(*history, std::move(r), dt);
            } else {
                ExpStepResult r = step_explicit(grid, s, carry, dt, sc);
                next = r.next;
                flux = r.flux;
                carry = r.carry;
                const Totals after = totals(next, grid);
                const auto& rec = r.record;
                const double expected = -rec.pressure_work_old + rec.injected_energy + rec.pressure_work_new -
                                        rec.withheld_energy + rec.stabilization_energy;
                balanced_before = before.energy;
                balanced_after = before.energy + (after.energy - before.energy - expected);
                raw_drift = std::abs(after.energy - before.energy) / std::abs(before.energy);
            }
            done = true;
        } catch (const CflViolation& e) {
            if (!adaptive || attempt >= max_retries) {
                rep.failed = true;
                rep.failure = e.what();
                break;
            }
            dt = std::min(0.5 * dt, e.required_dt());
        } catch (const std::exception& e) {
            if (!adaptive || attempt >= max_retries) {
                rep.failed = true;
                rep.failure = e.what();
                break;
            }
            dt *= 0.5;
        }
        if (rep.failed) break;
        ++step;

        const Totals after = totals(next, grid);
        rep.max_mass_drift = std::max(rep.max_mass_drift, std::abs(after.mass - before.mass) / before.mass);
        rep.max_energy_drift =
            std::max(rep.max_energy_drift, std::abs(balanced_after - balanced_before) / std::abs(balanced_before));
        rep.max_raw_energy_drift = std::max(rep.max_raw_energy_drift, raw_drift);

        StepLog log;
        log.step = step;
        log.time = next.time;
        log.dt = dt;
        log.mass = after.mass;
        log.energy = after.energy;
        log.scheme_energy = balanced_after;
        log.global_entropy = global_entropy(next, grid, w);
        log.picard_iterations = picard;
        log.cfl_entropy_dt = std::numeric_limits<double>::quiet_NaN();
        if (!pc) {
            log.cfl_entropy_dt = entropy_cfl_dt(grid, s, flux, next, w);
            if (dt > log.cfl_entropy_dt * (1.0 + 1e-12)) diag.entropy_cfl_respected = false;
        }
        if (log.global_entropy > previous_entropy + 1e-12 * std::max(1.0, std::abs(previous_entropy)))
            diag.entropy_decreasing = false;
        previous_entropy = log.global_entropy;

        if (cfg.entropy_residuals) {
            const auto r = entropy_residual_field(grid, s, next, flux, dt, w,
                                                  pc ? TimeLevel::implicit_level : TimeLevel::explicit_level);
            const double scale = std::max(max_abs(eta_field(s, w)), max_abs(eta_field(next, w)));
            double worst = -std::numeric_limits<double>::infinity();
            for (std::size_t k = 0; k < r.size(); ++k) worst = std::max(worst, r[k] * dt / (grid.widths[k] * scale));
            log.max_entropy_residual = worst;
            diag.max_entropy_residual = step == 1 ? worst : std::max(diag.max_entropy_residual, worst);
            if (diag.residual_snapshots.size() < cfg.residual_snapshots && step % cfg.output_cadence == 0) {
                diag.residual_snapshots.push_back(r);
                diag.snapshot_times.push_back(next.time);
            }
        }
        if (auditor) auditor->observe(s, next, flux, dt);

        s = std::move(next);
        if (next_stop < stops.size() && s.time >= stops[next_stop] * (1.0 - 1e-12)) {
            rep.captures.push_back(s);
            ++next_stop;
        }
        if (step % cfg.output_cadence == 0 || s.time >= T * (1.0 - 1e-12)) diag.log.push_back(log);
    }
    rep.steps = step;
    rep.final_state = s;

    if (auditor) {
        diag.aggregates = auditor->aggregates();
        diag.bounds = theorem_bound_audit(diag.aggregates, w, mesh_metrics(grid), diag.aggregates.measured_M);
    }

    const auto exact = exact_on_window(rep);
    for (std::size_t k = rep.window_begin; k < rep.window_end; ++k) {
        const double err = std::abs(s.rho[k] - exact[k - rep.window_begin].rho);
        rep.l1_rho_error += grid.widths[k] * err;
        rep.linf_rho_error = std::max(rep.linf_rho_error, err);
    }
    rep.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

std::vector<Primitive> exact_on_window(const RunReport& report) {
    const auto& cfg = report.config;
    const RiemannSolution sol = solve_riemann(cfg.left, cfg.right, cfg.scheme.gamma);
    const double t = report.final_state.time;
    std::vector<Primitive> out;
    out.reserve(report.window_end - report.window_begin);
    for (std::size_t k = report.window_begin; k < report.window_end; ++k) {
        const double x = report.grid.centers[k];
        if (t > 0.0) {
            out.push_back(sol.sample((x - cfg.x0) / t));
        } else {
            out.push_back(x < cfg.x0 ? cfg.left : cfg.right);
        }
    }
    return out;
}

double l1_density_error(const RunReport& report) {
    const auto exact = exact_on_window(report);
    double err = 0.0;
    for (std::size_t k = report.window_begin; k < report.window_end; ++k)
        err += report.grid.widths[k] * std::abs(report.final_state.rho[k] - exact[k - report.window_begin].rho);
    return err;
}

}  // namespace ieuler
