#include "pc_newton.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/SparseCore>
#include <Eigen/SparseLU>

#include "ieuler/convex.hpp"
#include "ieuler/flux.hpp"

namespace ieuler {

namespace {

// Unknowns interleaved per cell: ln rho_K, ln e_K, u_{K+1}; the last cell has no face.
constexpr int band = 8;

struct Unknowns {
    std::vector<double> rho, e, u;
};

Unknowns unpack(const std::vector<double>& y, std::size_t n) {
    Unknowns v{std::vector<double>(n), std::vector<double>(n), std::vector<double>(n + 1, 0.0)};
    for (std::size_t k = 0; k < n; ++k) {
        v.rho[k] = std::exp(y[3 * k]);
        v.e[k] = std::exp(y[3 * k + 1]);
        if (k + 1 < n) v.u[k + 1] = y[3 * k + 2];
    }
    return v;
}

class Residual {
public:
    explicit Residual(const CorrectionProblem& p) : p_(p), n_(p.grid.n_cells()) {
        u_ref_ = 0.0;
        for (std::size_t k = 0; k < n_; ++k)
            u_ref_ = std::max(u_ref_, sound_speed(p.old_state.rho[k], p.old_state.p[k], p.cfg.gamma));
        for (double v : p.u_tilde) u_ref_ = std::max(u_ref_, std::abs(v));
    }

    std::size_t size() const { return 3 * n_ - 1; }
    bool is_velocity(std::size_t j) const { return j % 3 == 2; }
    double velocity_scale() const { return u_ref_; }

    std::vector<double> operator()(const std::vector<double>& y) const {
        const auto& g = p_.grid;
        const auto& s0 = p_.old_state;
        const double dt = p_.dt, gm1 = p_.cfg.gamma - 1.0;
        const EntropyWeights w{p_.cfg.gamma};
        const Unknowns v = unpack(y, n_);
        const auto rf = face_values(v.rho, v.u, p_.cfg.reconstruction, w.phi_rho());
        const auto ef = face_values(v.e, v.u, p_.cfg.reconstruction, w.phi_e());
        std::vector<double> F(n_ + 1, 0.0), p(n_);
        for (std::size_t i = 1; i < n_; ++i) F[i] = v.u[i] * rf[i];
        for (std::size_t k = 0; k < n_; ++k) p[k] = gm1 * v.rho[k] * v.e[k];

        std::vector<double> r(size());
        for (std::size_t k = 0; k < n_; ++k) {
            const double c = g.widths[k] / dt;
            r[3 * k] = (c * (v.rho[k] - s0.rho[k]) + F[k + 1] - F[k]) / (c * std::max(s0.rho[k], v.rho[k]));
            const double energy = c * (v.rho[k] * v.e[k] - s0.rho[k] * s0.e[k]) + F[k + 1] * ef[k + 1] -
                                  F[k] * ef[k] + p[k] * (v.u[k + 1] - v.u[k]) - g.widths[k] * p_.source[k];
            r[3 * k + 1] = energy / (c * std::max(s0.rho[k] * s0.e[k], v.rho[k] * v.e[k]));
            if (k + 1 < n_) {
                const std::size_t i = k + 1;
                const double m = g.dual_volume(i) * p_.rho_dual[i] / dt;
                const double mom = m * (v.u[i] - p_.u_tilde[i]) + p[i] - p[i - 1] -
                                   p_.zeta[i] * (s0.p[i] - s0.p[i - 1]);
                r[3 * k + 2] = mom / (m * u_ref_);
            }
        }
        return r;
    }

private:
    const CorrectionProblem& p_;
    std::size_t n_;
    double u_ref_;
};

double norm2(const std::vector<double>& r) {
    double s = 0.0;
    for (double x : r) s += x * x;
    return std::sqrt(s);
}

double norm_inf(const std::vector<double>& r) {
    double s = 0.0;
    for (double x : r) s = std::max(s, std::abs(x));
    return s;
}

// Columns more than two bands apart touch disjoint rows and share one evaluation.
Eigen::SparseMatrix<double> jacobian(const Residual& res, const std::vector<double>& y, const std::vector<double>& r0) {
    const std::size_t N = y.size();
    const std::size_t colors = 2 * band + 1;
    std::vector<Eigen::Triplet<double>> entries;
    entries.reserve(N * colors);
    for (std::size_t c = 0; c < colors; ++c) {
        std::vector<double> yp = y;
        std::vector<double> step(N, 0.0);
        bool any = false;
        for (std::size_t j = c; j < N; j += colors) {
            step[j] = 1e-7 * (res.is_velocity(j) ? res.velocity_scale() : 1.0);
            yp[j] += step[j];
            any = true;
        }
        if (!any) continue;
        const auto r1 = res(yp);
        for (std::size_t j = c; j < N; j += colors) {
            const std::size_t lo = j >= static_cast<std::size_t>(band) ? j - band : 0;
            const std::size_t hi = std::min(N - 1, j + band);
            for (std::size_t row = lo; row <= hi; ++row) {
                const double d = (r1[row] - r0[row]) / step[j];
                if (d != 0.0) entries.emplace_back(static_cast<int>(row), static_cast<int>(j), d);
            }
        }
    }
    Eigen::SparseMatrix<double> J(static_cast<int>(N), static_cast<int>(N));
    J.setFromTriplets(entries.begin(), entries.end());
    J.makeCompressed();
    return J;
}

}  // namespace

bool newton_correction(const CorrectionProblem& prob, std::vector<double>& rho, std::vector<double>& e,
                       std::vector<double>& u, int max_iter) {
    const std::size_t n = prob.grid.n_cells();
    const Residual res(prob);
    const std::size_t N = res.size();
    std::vector<double> y(N);
    for (std::size_t k = 0; k < n; ++k) {
        y[3 * k] = std::log(rho[k]);
        y[3 * k + 1] = std::log(e[k]);
        if (k + 1 < n) y[3 * k + 2] = u[k + 1];
    }

    std::vector<double> r = res(y);
    double merit = norm2(r);
    bool ok = false;
    double tau = 1.0;  // pseudo time step, grown as the residual falls
    for (int it = 0; it < max_iter && std::isfinite(merit); ++it) {
        if (norm_inf(r) <= 1e-10) {
            ok = true;
            break;
        }
        Eigen::SparseMatrix<double> J = jacobian(res, y, r);
        Eigen::VectorXd rhs(static_cast<int>(N));
        for (std::size_t j = 0; j < N; ++j) rhs[static_cast<int>(j)] = -r[j];

        bool accepted = false;
        for (int attempt = 0; attempt < 30 && !accepted; ++attempt) {
            Eigen::SparseMatrix<double> A = J;
            for (int j = 0; j < static_cast<int>(N); ++j) A.coeffRef(j, j) += 1.0 / tau;
            Eigen::SparseLU<Eigen::SparseMatrix<double>> lu;
            lu.compute(A);
            Eigen::VectorXd d;
            if (lu.info() == Eigen::Success) d = lu.solve(rhs);
            if (lu.info() != Eigen::Success || !d.allFinite()) {
                tau *= 0.25;
                continue;
            }
            // at most a factor e per step on density and energy
            double largest_log = 0.0;
            for (std::size_t j = 0; j < N; ++j)
                if (!res.is_velocity(j)) largest_log = std::max(largest_log, std::abs(d[static_cast<int>(j)]));
            const double cap = largest_log > 1.0 ? 1.0 / largest_log : 1.0;
            std::vector<double> y_try(N);
            for (std::size_t j = 0; j < N; ++j) y_try[j] = y[j] + cap * d[static_cast<int>(j)];
            auto r_try = res(y_try);
            const double m = norm2(r_try);
            if (!std::isfinite(m) || m > 2.0 * merit) {
                tau *= 0.25;
                continue;
            }
            tau = std::min(tau * std::max(2.0, merit / m), 1e14);
            y.swap(y_try);
            r = std::move(r_try);
            merit = m;
            accepted = true;
        }
        if (!accepted) break;
    }
    if (!ok) return false;
    const Unknowns v = unpack(y, n);
    rho = v.rho;
    e = v.e;
    u = v.u;
    return true;
}

}  // namespace ieuler
