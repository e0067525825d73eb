#include "ieuler/audit.hpp"

#include <algorithm>
#include <cmath>

namespace ieuler {

namespace {

double delta_phi(const ConvexFunction& phi, double zk, double zl, double zs) {
    const double zkl = x_kl(phi, zk, zl);
    return phi.value(zk) - phi.value(zs) + phi.d1(zk) * (zkl - zk) +
           0.5 * (phi.d1(zk) + phi.d1(zl)) * (zs - zkl);
}

double velocity_level_sum(const Grid& g, const std::vector<double>& u, double r) {
    // Both ordered pairs of faces of each cell contribute.
    double s = 0.0;
    for (std::size_t k = 0; k < g.n_cells(); ++k) {
        const double h = g.widths[k];
        s += 2.0 * h * std::pow(std::abs(u[k + 1] - u[k]) / h, r);
    }
    return s;
}

}  // namespace

RunAuditor::RunAuditor(const Grid& grid, const SchemeConfig& cfg, double t_end)
    : grid_(&grid),
      cfg_(cfg),
      weights_{cfg.gamma},
      q_(cfg.stabilization ? cfg.stabilization->q : 2.0),
      mass_(grid, t_end),
      energy_(grid, t_end),
      total_(grid, t_end) {
    agg_.scheme = cfg.scheme;
    agg_.reconstruction = cfg.reconstruction;
    agg_.q = q_;
}

void RunAuditor::update_bound(const State& s) {
    double m = agg_.measured_M;
    for (std::size_t k = 0; k < s.rho.size(); ++k)
        m = std::max({m, s.rho[k], 1.0 / s.rho[k], s.e[k], 1.0 / s.e[k]});
    for (double v : s.u) m = std::max(m, std::abs(v));
    agg_.measured_M = m;
}

void RunAuditor::add_level(const State& s) {
    sv_rho_.push_back(space_variation(s.rho));
    sv_e_.push_back(space_variation(s.e));
    vel_q_.push_back(velocity_level_sum(*grid_, s.u, q_));
    vel_qc_.push_back(velocity_level_sum(*grid_, s.u, q_ / (q_ - 1.0)));
}

void RunAuditor::start(const State& s0) {
    update_bound(s0);
    add_level(s0);
}

void RunAuditor::observe(const State& s, const State& nx, const FluxSet& f, double dt) {
    const Grid& g = *grid_;
    const std::size_t n = g.n_cells();
    const bool implicit = cfg_.scheme == SchemeKind::pressure_correction;
    const State& lvl = implicit ? nx : s;  // level of the face values
    const ConvexFunction fr = weights_.phi_rho(), fe = weights_.phi_e();

    std::vector<double> rm(n, 0.0), re(n, 0.0), rt(n);
    for (std::size_t i = 1; i < n; ++i) {
        const double a = delta_phi(fr, lvl.rho[i - 1], lvl.rho[i], f.rho_face[i]) * lvl.u[i];
        const double b = delta_phi(fe, lvl.e[i - 1], lvl.e[i], f.e_face[i]) * f.mass_flux[i];
        rm[i - 1] += a;
        rm[i] -= a;
        re[i - 1] += b;
        re[i] -= b;
    }
    for (std::size_t k = 0; k < n; ++k) {
        rm[k] /= g.widths[k];
        re[k] /= g.widths[k];
        rt[k] = rm[k] + re[k];
    }
    const double t_pair = implicit ? time_ + dt : time_;
    mass_.add_level(rm, t_pair, dt);
    energy_.add_level(re, t_pair, dt);
    total_.add_level(rt, t_pair, dt);

    if (!implicit) {
        for (std::size_t k = 0; k < n; ++k) {
            const double div_f = f.mass_flux[k + 1] - f.mass_flux[k];
            const double d_rho = fr.d1(nx.rho[k]) - fr.d1(s.rho[k]);
            const double d_e = fe.d1(nx.e[k]) - fe.d1(s.e[k]);
            const double conv_e = f.mass_flux[k + 1] * (f.e_face[k + 1] - s.e[k]) - f.mass_flux[k] * (f.e_face[k] - s.e[k]);
            agg_.l1_time_mass += dt * std::abs(d_rho * div_f);
            agg_.l1_time_energy += dt * std::abs(d_e * conv_e);
            agg_.l1_upwind += dt * std::abs(d_rho * s.rho[k] * (s.u[k + 1] - s.u[k]));
        }
        if (cfg_.reconstruction == Reconstruction::upwind &&
            dt > entropy_cfl_dt(g, s, f, nx, weights_) * (1.0 + 1e-9))
            agg_.entropy_cfl_respected = false;
    }

    for (std::size_t k = 0; k < n; ++k) {
        agg_.bv_time_rho += g.widths[k] * std::abs(nx.rho[k] - s.rho[k]);
        agg_.bv_time_e += g.widths[k] * std::abs(nx.e[k] - s.e[k]);
    }
    update_bound(nx);
    add_level(nx);
    dts_.push_back(dt);
    agg_.dt_max = std::max(agg_.dt_max, dt);
    ++agg_.steps;
    time_ += dt;
}

RemainderAggregates RunAuditor::aggregates() const {
    RemainderAggregates a = agg_;
    a.dual_norm_mass = mass_.value();
    a.dual_norm_energy = energy_.value();
    a.dual_norm_total = total_.value();
    double vq = 0.0, vqc = 0.0;
    a.bv_space_rho = a.bv_space_e = 0.0;
    for (std::size_t n = 0; n < sv_rho_.size(); ++n) {
        const double before = n > 0 ? dts_[n - 1] : 0.0;
        const double after = n < dts_.size() ? dts_[n] : 0.0;
        const double w = std::max(before, after);
        a.bv_space_rho += w * sv_rho_[n];
        a.bv_space_e += w * sv_e_[n];
        vq += w * vel_q_[n];
        vqc += w * vel_qc_[n];
    }
    a.velocity_seminorm_q_power = vq / 2.0;
    a.velocity_norm_q = std::pow(vq, 1.0 / q_);
    a.velocity_norm_q_conjugate = std::pow(vqc, (q_ - 1.0) / q_);
    return a;
}

std::vector<BoundEntry> theorem_bound_audit(const RemainderAggregates& a, const EntropyWeights& w,
                                            const MeshMetrics& metrics, double M) {
    const ConvexFunction fr = w.phi_rho(), fe = w.phi_e();
    const double d1_rho = std::max(std::abs(fr.d1(1.0 / M)), std::abs(fr.d1(M)));
    const double d1_e = std::max(std::abs(fe.d1(1.0 / M)), std::abs(fe.d1(M)));
    const double d2_rho = std::max(fr.d2(1.0 / M), fr.d2(M));
    const double d2_e = std::max(fe.d2(1.0 / M), fe.d2(M));
    const double h = metrics.max_diameter;
    const double h_under = metrics.min_volume_to_perimeter;

    const double b_mass = 3.0 * M * d1_rho * a.bv_space_rho * h;
    const double b_energy = 3.0 * M * M * d1_e * a.bv_space_e * h;

    std::vector<BoundEntry> out;
    if (a.scheme == SchemeKind::pressure_correction) {
        out.push_back({"implicit.conservative_mass_remainder", a.dual_norm_mass, b_mass, true});
        out.push_back({"implicit.conservative_energy_remainder", a.dual_norm_energy, b_energy, true});
        out.push_back({"implicit.conservative_remainder", a.dual_norm_total, b_mass + b_energy, true});
        return out;
    }
    out.push_back({"explicit.space_remainder", a.dual_norm_total, b_mass + b_energy, true});
    const double ratio = a.dt_max / h_under;
    const double t_mass = M * M * d2_rho * a.bv_time_rho * ratio;
    const double t_energy = M * M * d2_e * a.bv_time_e * ratio;
    out.push_back({"explicit.time_remainder_mass", a.l1_time_mass, t_mass, true});
    out.push_back({"explicit.time_remainder_energy", a.l1_time_energy, t_energy, true});
    out.push_back({"explicit.time_remainder", a.l1_time_mass + a.l1_time_energy, t_mass + t_energy, true});

    const bool upwind_applies = a.reconstruction == Reconstruction::upwind && a.entropy_cfl_respected;
    const double q = a.q;
    const double common = static_cast<double>(metrics.max_faces_per_cell) * metrics.shape_constant *
                          std::pow(M, (2.0 * q - 1.0) / q) * d2_rho * std::pow(a.bv_time_rho, 1.0 / q) *
                          std::pow(a.dt_max, 1.0 / q);
    out.push_back({"explicit.upwind_remainder_conjugate_norm", a.l1_upwind, common * a.velocity_norm_q_conjugate,
                   upwind_applies});
    out.push_back({"explicit.upwind_remainder_q_norm", a.l1_upwind, common * a.velocity_norm_q, upwind_applies});
    return out;
}

}  // namespace ieuler
