#include "ieuler/output.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>

#include <fmt/format.h>

#include "ieuler/convex.hpp"
#include "ieuler/errors.hpp"

namespace ieuler {

namespace {

std::ofstream open(const std::filesystem::path& p) {
    std::ofstream out(p);
    if (!out) throw ConfigError("cannot write '" + p.string() + "'");
    return out;
}

const char* scheme_name(SchemeKind k) {
    return k == SchemeKind::pressure_correction ? "pressure_correction" : "explicit";
}

const char* reconstruction_name(Reconstruction r) { return r == Reconstruction::upwind ? "upwind" : "muscl"; }

}  // namespace

std::string format_audit(const RunReport& r) {
    const auto& a = r.diagnostics.aggregates;
    std::string s = fmt::format("# ieuler audit, schema {}\n", output_schema_version);
    s += fmt::format("status = {}\n", r.failed ? "failed" : "ok");
    if (r.failed) s += fmt::format("failure = {}\n", r.failure);
    s += fmt::format("scheme = {}\nreconstruction = {}\n", scheme_name(r.config.scheme.scheme),
                     reconstruction_name(r.config.scheme.reconstruction));
    s += fmt::format("cells = {}\npadded_cells = {}\nsteps = {}\nfinal_time = {:.17g}\n", r.config.n_cells,
                     r.grid.n_cells(), r.steps, r.final_state.time);
    s += fmt::format("l1_rho_error = {:.17g}\nlinf_rho_error = {:.17g}\n", r.l1_rho_error, r.linf_rho_error);
    s += fmt::format("max_mass_drift = {:.17g}\nmax_energy_drift = {:.17g}\n", r.max_mass_drift, r.max_energy_drift);
    if (r.config.scheme.scheme == SchemeKind::explicit_segregated)
        s += fmt::format("max_raw_energy_drift = {:.17g}\n", r.max_raw_energy_drift);
    s += fmt::format("max_entropy_residual = {:.17g}\n", r.diagnostics.max_entropy_residual);
    s += fmt::format("global_entropy_decreasing = {}\n", r.diagnostics.entropy_decreasing);
    if (r.config.scheme.scheme == SchemeKind::explicit_segregated)
        s += fmt::format("entropy_cfl_respected = {}\n", r.diagnostics.entropy_cfl_respected);
    if (r.config.theorem_audits) {
        s += fmt::format("measured_M = {:.17g}\n", a.measured_M);
        s += fmt::format("bv_space_rho = {:.17g}\nbv_space_e = {:.17g}\n", a.bv_space_rho, a.bv_space_e);
        s += fmt::format("bv_time_rho = {:.17g}\nbv_time_e = {:.17g}\n", a.bv_time_rho, a.bv_time_e);
        s += "# bound measured bound ratio status\n";
        for (const auto& b : r.diagnostics.bounds)
            s += fmt::format("bound {} {:.17g} {:.17g} {:.6g} {}\n", b.name, b.measured, b.bound, b.ratio(),
                             !b.applies ? "n/a" : (b.holds() ? "ok" : "violated"));
    }
    s += fmt::format("wall_seconds = {:.6g}\n", r.wall_seconds);
    return s;
}

void write_outputs(const RunReport& r, const std::string& dir) {
    namespace fs = std::filesystem;
    const fs::path root(dir);
    std::error_code ec;
    fs::create_directories(root, ec);
    if (ec) throw ConfigError("cannot create output directory '" + dir + "': " + ec.message());

    const State& s = r.final_state;
    const EntropyWeights w{r.config.scheme.gamma};
    const auto exact = exact_on_window(r);

    {
        auto out = open(root / "fields.csv");
        out << "x,rho,u,p,e,eta\n";
        for (std::size_t k = r.window_begin; k < r.window_end; ++k) {
            const double uc = 0.5 * (s.u[k] + s.u[k + 1]);
            out << fmt::format("{:.17g},{:.17g},{:.17g},{:.17g},{:.17g},{:.17g}\n", r.grid.centers[k], s.rho[k], uc,
                               s.p[k], s.e[k], eta(s.rho[k], s.e[k], w));
        }
    }
    {
        auto out = open(root / "exact.csv");
        out << "x,rho,u,p,e\n";
        for (std::size_t k = r.window_begin; k < r.window_end; ++k) {
            const Primitive& q = exact[k - r.window_begin];
            out << fmt::format("{:.17g},{:.17g},{:.17g},{:.17g},{:.17g}\n", r.grid.centers[k], q.rho, q.u, q.p,
                               eos_energy_from_pressure(q.rho, q.p, r.config.scheme.gamma));
        }
    }
    {
        auto out = open(root / "diag.csv");
        out << "step,time,dt,mass,energy,scheme_energy,global_entropy,max_entropy_residual,cfl_entropy_dt,"
               "picard_iterations\n";
        for (const auto& l : r.diagnostics.log)
            out << fmt::format("{},{:.17g},{:.17g},{:.17g},{:.17g},{:.17g},{:.17g},{:.17g},{:.17g},{}\n", l.step, l.time,
                               l.dt, l.mass, l.energy, l.scheme_energy, l.global_entropy, l.max_entropy_residual,
                               l.cfl_entropy_dt, l.picard_iterations);
    }
    {
        auto out = open(root / "audit.txt");
        out << format_audit(r);
    }
    {
        auto out = open(root / "plot.gp-data");
        const char* names[] = {"rho", "u", "p", "e"};
        for (int f = 0; f < 4; ++f) {
            for (int which = 0; which < 2; ++which) {
                out << fmt::format("# {} {}\n", names[f], which == 0 ? "numeric" : "exact");
                for (std::size_t k = r.window_begin; k < r.window_end; ++k) {
                    double v = 0.0;
                    if (which == 0) {
                        const double vals[] = {s.rho[k], 0.5 * (s.u[k] + s.u[k + 1]), s.p[k], s.e[k]};
                        v = vals[f];
                    } else {
                        const Primitive& q = exact[k - r.window_begin];
                        const double vals[] = {q.rho, q.u, q.p, eos_energy_from_pressure(q.rho, q.p, r.config.scheme.gamma)};
                        v = vals[f];
                    }
                    out << fmt::format("{:.17g} {:.17g}\n", r.grid.centers[k], v);
                }
                out << "\n\n";
            }
        }
    }
}

}  // namespace ieuler
