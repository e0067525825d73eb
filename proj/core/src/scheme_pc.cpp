#include "ieuler/scheme_pc.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ieuler/dual_kinetic.hpp"
#include "ieuler/errors.hpp"
#include "pc_newton.hpp"
#include "ieuler/tridiagonal.hpp"

namespace ieuler {

PcHistory PcHistory::bootstrap(const State& s, double dt) {
    PcHistory h;
    h.previous = s;
    h.current = s;
    h.previous_dt = dt;
    return h;
}

namespace {

double lagged_dt(const PcHistory& h, double dt) { return h.current_flux ? h.previous_dt : dt; }

std::vector<double> upwind_values(const std::vector<double>& z, const std::vector<double>& u) {
    const std::size_t n = z.size();
    std::vector<double> zf(n + 1);
    zf[0] = z[0];
    zf[n] = z[n - 1];
    for (std::size_t i = 1; i < n; ++i) zf[i] = upwind_face_value(z[i - 1], z[i], u[i]);
    return zf;
}

// Face value minus its upwind part, frozen at the previous iterate.
std::vector<double> deferred_correction(const std::vector<double>& z, const std::vector<double>& u,
                                        Reconstruction rec, const ConvexFunction& phi) {
    const std::size_t n = z.size();
    std::vector<double> d(n + 1, 0.0);
    if (rec == Reconstruction::upwind) return d;
    const auto full = face_values(z, u, rec, phi);
    const auto up = upwind_values(z, u);
    for (std::size_t i = 1; i < n; ++i) d[i] = full[i] - up[i];
    return d;
}

bool all_positive(const std::vector<double>& v) {
    return std::all_of(v.begin(), v.end(), [](double x) { return x > 0.0 && std::isfinite(x); });
}

// Implicit upwind transport: h/dt a_K z_K + sum_s m_s z_up - ... = rhs_K, where m
// is the face "mass" (velocity for the mass equation, mass flux for the energy)
// and the correction d shifts the upwind value.
void assemble_transport(Tridiagonal& sys, const Grid& grid, const std::vector<double>& u,
                        const std::vector<double>& m, const std::vector<double>& d) {
    const std::size_t n = grid.n_cells();
    for (std::size_t k = 0; k < n; ++k) {
        if (k + 1 < n) {
            const double f = m[k + 1];
            if (u[k + 1] >= 0.0) sys.diag[k] += f;
            else sys.upper[k] += f;
            sys.rhs[k] -= f * d[k + 1];
        }
        if (k > 0) {
            const double f = m[k];
            if (u[k] >= 0.0) sys.lower[k] -= f;
            else sys.diag[k] -= f;
            sys.rhs[k] += f * d[k];
        }
    }
}

}  // namespace

Prediction predict_velocity(const Grid& grid, const PcHistory& h, double dt) {
    const std::size_t n = grid.n_cells();
    Prediction pr;
    pr.rho_dual_current = dual_densities(grid, h.current.rho);
    pr.rho_dual_previous = dual_densities(grid, h.previous.rho);
    const double dt_prev = lagged_dt(h, dt);
    // The dual mass balance between the two lagged densities holds over the previous step.
    if (h.current_flux) {
        pr.dual_flux = h.current_flux->dual_flux;
        for (double& g : pr.dual_flux) g *= dt_prev / dt;
    }

    pr.zeta.resize(n + 1);
    for (std::size_t i = 0; i <= n; ++i)
        pr.zeta[i] = std::sqrt(pr.rho_dual_current[i] / pr.rho_dual_previous[i] * dt_prev / dt);

    const auto& p = h.current.p;
    const auto& g = pr.dual_flux;
    const bool convective = !g.empty();
    Tridiagonal sys(n - 1);
    for (std::size_t i = 1; i < n; ++i) {
        const std::size_t j = i - 1;
        const double vol = grid.dual_volume(i);
        sys.diag[j] = vol / dt * pr.rho_dual_current[i];
        sys.rhs[j] = vol / dt * pr.rho_dual_previous[i] * h.current.u[i] - pr.zeta[i] * (p[i] - p[i - 1]);
        if (!convective) continue;
        const double g_right = g[i];
        if (g_right >= 0.0) sys.diag[j] += g_right;
        else if (i + 1 < n) sys.upper[j] += g_right;
        const double g_left = g[i - 1];
        if (g_left >= 0.0) {
            if (i > 1) sys.lower[j] -= g_left;
        } else {
            sys.diag[j] -= g_left;
        }
    }
    const auto x = solve(sys);
    pr.u_tilde.assign(n + 1, 0.0);
    for (std::size_t i = 1; i < n; ++i) pr.u_tilde[i] = x[i - 1];
    return pr;
}

Prediction predict_velocity(const Grid& grid, const State& state_prev, const State& state_curr,
                            double dt) {
    PcHistory h;
    h.previous = state_prev;
    h.current = state_curr;
    h.previous_dt = dt;
    return predict_velocity(grid, h, dt);
}

std::vector<double> corrective_source_pc(const Grid& grid, const std::vector<double>& u_tilde,
                                         const std::vector<double>& u_prev,
                                         const std::vector<double>& rho_dual_prev,
                                         const std::vector<double>& dual_flux, double dt) {
    const auto r = dual_kinetic_remainder(grid, rho_dual_prev, u_prev, u_tilde, u_tilde, dual_flux, dt);
    auto s = dispatch_to_cells(grid, r);
    for (double& x : s) x = std::max(x, 0.0);
    return s;
}

CorrectionResult correction_solve(const Grid& grid, const State& s0, const Prediction& pr,
                                  double dt, const SchemeConfig& cfg) {
    const std::size_t n = grid.n_cells();
    const double gm1 = cfg.gamma - 1.0;
    const EntropyWeights w{cfg.gamma};
    const ConvexFunction f_rho = w.phi_rho(), f_e = w.phi_e();
    const auto& rd = pr.rho_dual_current;

    CorrectionResult out;
    out.source = cfg.corrective_source
                     ? corrective_source_pc(grid, pr.u_tilde, s0.u, pr.rho_dual_previous, pr.dual_flux, dt)
                     : std::vector<double>(n, 0.0);
    const auto& src = out.source;

    // u_i(p) = b_i - beta_i (p_i - p_{i-1}) on interior faces.
    std::vector<double> beta(n + 1, 0.0), b(n + 1, 0.0);
    for (std::size_t i = 1; i < n; ++i) {
        beta[i] = dt / (rd[i] * grid.dual_volume(i));
        b[i] = pr.u_tilde[i] + beta[i] * pr.zeta[i] * (s0.p[i] - s0.p[i - 1]);
    }

    std::vector<double> rho = s0.rho, e = s0.e, p = s0.p, u = pr.u_tilde;
    std::vector<double> p_star(n), u_new(n + 1, 0.0), mass_flux(n + 1, 0.0);
    std::vector<double> d_rho, d_e;
    Tridiagonal sys(n);
    std::vector<double> x, scratch;
    bool converged = false;
    double residual = 0.0;
    int it = 0, total = 0;

    // Plain Picard first; if it stalls, Newton from its best iterate and Picard again from the root.
    std::vector<double> best_rho = rho, best_e = e, best_u = u;
    double best = std::numeric_limits<double>::infinity();
    for (int pass = 0; pass < 2 && !converged; ++pass) {
        if (pass == 1) {
            rho = best_rho;
            e = best_e;
            u = best_u;
            const CorrectionProblem prob{grid, s0, pr.u_tilde, pr.zeta, rd, src, dt, cfg};
            if (!newton_correction(prob, rho, e, u, cfg.picard_max_iter)) break;
            for (std::size_t k = 0; k < n; ++k) p[k] = gm1 * rho[k] * e[k];
        }
        for (it = 1; it <= cfg.picard_max_iter; ++it) {
            // Pressure: (gamma-1) x energy balance with coefficients frozen at the iterate.
            const auto rf = face_values(rho, u, cfg.reconstruction, f_rho);
            const auto ef = face_values(e, u, cfg.reconstruction, f_e);
            sys.resize(n);
            for (std::size_t k = 0; k < n; ++k) {
                const double h = grid.widths[k];
                sys.diag[k] = h / dt;
                sys.rhs[k] = h / dt * s0.p[k] + gm1 * h * src[k];
                if (k + 1 < n) {
                    const double a = gm1 * (rf[k + 1] * ef[k + 1] + p[k]);
                    sys.diag[k] += a * beta[k + 1];
                    sys.upper[k] = -a * beta[k + 1];
                    sys.rhs[k] -= a * b[k + 1];
                }
                if (k > 0) {
                    const double a = gm1 * (rf[k] * ef[k] + p[k]);
                    sys.diag[k] += a * beta[k];
                    sys.lower[k] = -a * beta[k];
                    sys.rhs[k] += a * b[k];
                }
            }
            solve_into(sys, p_star, scratch);
            for (std::size_t i = 1; i < n; ++i) u_new[i] = b[i] - beta[i] * (p_star[i] - p_star[i - 1]);

            // Mass.
            d_rho = deferred_correction(rho, u_new, cfg.reconstruction, f_rho);
            std::vector<double> rho_new;
            for (int attempt = 0; attempt < 2; ++attempt) {
                sys.resize(n);
                for (std::size_t k = 0; k < n; ++k) {
                    sys.diag[k] = grid.widths[k] / dt;
                    sys.rhs[k] = grid.widths[k] / dt * s0.rho[k];
                }
                assemble_transport(sys, grid, u_new, u_new, d_rho);
                solve_into(sys, rho_new, scratch);
                if (all_positive(rho_new)) break;
                std::fill(d_rho.begin(), d_rho.end(), 0.0);
            }
            if (!all_positive(rho_new)) throw NumericalError("pressure correction: non-positive density");
            const auto rho_up = upwind_values(rho_new, u_new);
            for (std::size_t i = 1; i < n; ++i) mass_flux[i] = u_new[i] * (rho_up[i] + d_rho[i]);

            // Internal energy: pressure work implicit where the cell expands.
            d_e = deferred_correction(e, u_new, cfg.reconstruction, f_e);
            std::vector<double> e_new;
            for (int attempt = 0; attempt < 2; ++attempt) {
                sys.resize(n);
                for (std::size_t k = 0; k < n; ++k) {
                    const double h = grid.widths[k];
                    const double div = u_new[k + 1] - u_new[k];
                    sys.diag[k] = h / dt * rho_new[k] + (div > 0.0 ? gm1 * rho_new[k] * div : 0.0);
                    sys.rhs[k] = h / dt * s0.rho[k] * s0.e[k] + h * src[k] +
                                 (div < 0.0 ? -gm1 * rho_new[k] * e[k] * div : 0.0);
                }
                assemble_transport(sys, grid, u_new, mass_flux, d_e);
                solve_into(sys, e_new, scratch);
                if (all_positive(e_new)) break;
                std::fill(d_e.begin(), d_e.end(), 0.0);
            }
            if (!all_positive(e_new)) throw NumericalError("pressure correction: non-positive internal energy");

            double diff = 0.0, pmax = 0.0;
            for (std::size_t k = 0; k < n; ++k) {
                const double pk = gm1 * rho_new[k] * e_new[k];
                diff = std::max({diff, std::abs(pk - p_star[k]), std::abs(pk - p[k])});
                pmax = std::max(pmax, std::abs(pk));
            }
            residual = diff / pmax;
            rho = std::move(rho_new);
            e = std::move(e_new);
            u = u_new;
            if (residual < best) {
                best = residual;
                best_rho = rho;
                best_e = e;
                best_u = u;
            }
            for (std::size_t k = 0; k < n; ++k) p[k] = gm1 * rho[k] * e[k];
            if (!std::isfinite(residual)) {
                if (pass == 1) throw NumericalError("pressure correction: non-finite residual");
                break;
            }
            if (residual <= cfg.picard_tol) {
                converged = true;
                break;
            }
        }
        total += std::min(it, cfg.picard_max_iter);
    }
    if (!converged)
        throw StepFailure("pressure correction: Picard iteration did not converge", cfg.picard_max_iter,
                          residual);

    // Final energy solve with the pressure work fully implicit, when that keeps
    // the matrix an M-matrix.
    bool polish = true;
    for (std::size_t k = 0; k < n && polish; ++k) {
        const double div = u[k + 1] - u[k];
        polish = grid.widths[k] / dt + gm1 * div > 0.0;
    }
    if (polish) {
        sys.resize(n);
        for (std::size_t k = 0; k < n; ++k) {
            const double h = grid.widths[k];
            const double div = u[k + 1] - u[k];
            sys.diag[k] = h / dt * rho[k] + gm1 * rho[k] * div;
            sys.rhs[k] = h / dt * s0.rho[k] * s0.e[k] + h * src[k];
        }
        assemble_transport(sys, grid, u, mass_flux, d_e);
        std::vector<double> e_pol;
        solve_into(sys, e_pol, scratch);
        if (all_positive(e_pol)) {
            e = std::move(e_pol);
            out.fully_implicit_energy = true;
        }
    }

    out.next.rho = std::move(rho);
    out.next.e = std::move(e);
    out.next.u = std::move(u);
    out.next.time = s0.time + dt;
    close_state(out.next, cfg.gamma);

    const auto rho_up = upwind_values(out.next.rho, out.next.u);
    const auto e_up = upwind_values(out.next.e, out.next.u);
    out.flux.rho_face.resize(n + 1);
    out.flux.e_face.resize(n + 1);
    for (std::size_t i = 0; i <= n; ++i) {
        out.flux.rho_face[i] = rho_up[i] + d_rho[i];
        out.flux.e_face[i] = e_up[i] + d_e[i];
    }
    out.flux.mass_flux = std::move(mass_flux);
    finish_flux_set(out.flux, grid, out.next.rho);
    out.iterations = total;
    out.residual = residual;
    return out;
}

double pc_energy(const Grid& grid, const State& s, const std::vector<double>& rho_lag,
                 double dt_squared) {
    double sum = internal_energy(s, grid) + dual_kinetic_energy(grid, rho_lag, s.u);
    const std::size_t n = grid.n_cells();
    for (std::size_t i = 1; i < n; ++i) {
        const double vol = grid.dual_volume(i);
        const double grad = (s.p[i] - s.p[i - 1]) / vol;
        sum += vol * dt_squared / (2.0 * rho_lag[i]) * grad * grad;
    }
    return sum;
}

PcStepResult step_pc(const Grid& grid, const PcHistory& h, double dt, const SchemeConfig& cfg) {
    Prediction pr = predict_velocity(grid, h, dt);
    CorrectionResult cr = correction_solve(grid, h.current, pr, dt, cfg);

    PcStepResult res;
    res.record.energy_before = pc_energy(grid, h.current, pr.rho_dual_previous, lagged_dt(h, dt) * dt);
    res.record.energy_after = pc_energy(grid, cr.next, pr.rho_dual_current, dt * dt);
    res.record.u_tilde = std::move(pr.u_tilde);
    res.record.zeta = std::move(pr.zeta);
    res.record.S = std::move(cr.source);
    res.record.picard_iters = cr.iterations;
    res.record.picard_residual = cr.residual;
    res.next = std::move(cr.next);
    res.flux = std::move(cr.flux);
    return res;
}

PcHistory advance_history(const PcHistory& h, PcStepResult&& step, double dt) {
    PcHistory next;
    next.previous = h.current;
    next.current = std::move(step.next);
    next.current_flux = std::move(step.flux);
    next.previous_dt = dt;
    return next;
}

}  // namespace ieuler
