#include <cstdio>
#include <string>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "ieuler/config.hpp"
#include "ieuler/errors.hpp"
#include "ieuler/output.hpp"
#include "ieuler/riemann.hpp"
#include "ieuler/run.hpp"

namespace {

constexpr int exit_config = 2;
constexpr int exit_step = 3;

int run_command(const std::string& path, const std::string& out_dir, bool no_correction) {
    ieuler::RunConfig cfg;
    try {
        cfg = ieuler::load_config(path);
        if (no_correction) cfg.scheme.corrective_source = false;
        if (!out_dir.empty()) cfg.output_dir = out_dir;
    } catch (const ieuler::ConfigError& e) {
        fmt::print(stderr, "config error: {}\n", e.what());
        return exit_config;
    }
    const ieuler::RunReport report = ieuler::run_case(cfg);
    try {
        ieuler::write_outputs(report, cfg.output_dir);
    } catch (const ieuler::ConfigError& e) {
        fmt::print(stderr, "output error: {}\n", e.what());
        return exit_config;
    }
    if (report.failed) {
        fmt::print(stderr, "step failure at t = {:.6g} after {} steps: {}\n", report.final_state.time, report.steps,
                   report.failure);
        return exit_step;
    }
    fmt::print("{} steps to t = {:.6g}, L1(rho) = {:.6e}, {:.2f} s, outputs in {}\n", report.steps,
               report.final_state.time, report.l1_rho_error, report.wall_seconds, cfg.output_dir);
    return 0;
}

int riemann_command(const std::string& name, int samples, double time) {
    ieuler::RiemannPreset p;
    try {
        p = ieuler::find_preset(name);
    } catch (const ieuler::ConfigError& e) {
        fmt::print(stderr, "config error: {}\n", e.what());
        return exit_config;
    }
    if (samples < 2) {
        fmt::print(stderr, "config error: --samples must be at least 2\n");
        return exit_config;
    }
    const double t = time > 0.0 ? time : p.end_time;
    ieuler::RiemannSolution sol;
    try {
        sol = ieuler::solve_riemann(p.left, p.right, p.gamma);
    } catch (const ieuler::VacuumError& e) {
        fmt::print(stderr, "{}\n", e.what());
        return exit_step;
    }
    fmt::print("# p_star = {:.17g} u_star = {:.17g} t = {:.17g}\n", sol.p_star, sol.u_star, t);
    fmt::print("x,rho,u,p,e\n");
    const double dx = (p.domain_right - p.domain_left) / samples;
    for (int i = 0; i < samples; ++i) {
        const double x = p.domain_left + (i + 0.5) * dx;
        const auto q = sol.sample((x - p.x0) / t);
        fmt::print("{:.17g},{:.17g},{:.17g},{:.17g},{:.17g}\n", x, q.rho, q.u, q.p,
                   ieuler::eos_energy_from_pressure(q.rho, q.p, p.gamma));
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Staggered finite-volume solver for the 1D Euler equations"};
    app.require_subcommand(1);

    std::string config_path, out_dir;
    bool no_correction = false;
    auto* run = app.add_subcommand("run", "Run a configured case");
    run->add_option("config", config_path, "INI configuration file")->required();
    run->add_option("--out", out_dir, "Output directory (overrides [output] dir)");
    run->add_flag("--no-correction", no_correction, "Drop the corrective kinetic-energy source");

    std::string preset;
    int samples = 1000;
    double time = 0.0;
    auto* riemann = app.add_subcommand("riemann", "Print the exact solution of a preset");
    riemann->add_option("preset", preset, "sod or toro-test5")->required();
    riemann->add_option("--samples", samples, "Number of sample points")->capture_default_str();
    riemann->add_option("--time", time, "Sampling time (defaults to the preset end time)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : exit_config;
    }
    if (*run) return run_command(config_path, out_dir, no_correction);
    return riemann_command(preset, samples, time);
}
