#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "ieuler/config.hpp"
#include "ieuler/errors.hpp"
#include "ieuler/output.hpp"
#include "ieuler/run.hpp"

using namespace ieuler;
namespace fs = std::filesystem;

namespace {

std::string read_file(const fs::path& p) {
    std::ifstream in(p);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::vector<std::string> lines(const std::string& s) {
    std::vector<std::string> out;
    std::istringstream in(s);
    for (std::string l; std::getline(in, l);) out.push_back(l);
    return out;
}

fs::path scratch(const std::string& name) {
    const fs::path p = fs::temp_directory_path() / ("ieuler_test_" + name);
    fs::remove_all(p);
    return p;
}

std::string error_of(const std::string& text) {
    try {
        parse_config(text);
    } catch (const ConfigError& e) {
        return e.what();
    }
    return "";
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("minimal Sod configuration") {
    const RunConfig c = parse_config("[problem]\npreset = sod\n[grid]\ncells = 100\n");
    CHECK(c.scheme.gamma == 1.4);
    CHECK(c.scheme.cfl_fraction == 0.5);
    CHECK(c.scheme.reconstruction == Reconstruction::upwind);
    CHECK(c.scheme.scheme == SchemeKind::pressure_correction);
    CHECK(c.scheme.end_time == 0.2);
    CHECK(c.n_cells == 100);
    CHECK(c.left.rho == 1.0);
    CHECK(c.right.p == 0.1);
    CHECK_FALSE(c.scheme.stabilization.has_value());
}

TEST_CASE("explicit Riemann data") {
    const RunConfig c = parse_config(
        "[problem]\nleft_rho = 2\nleft_u = 0.5\nleft_p = 3\nright_rho = 1\nright_p = 1\nend_time = 0.1\nx0 = 0.3\n"
        "[grid]\ncells = 50\npadding = none\n[scheme]\ntype = explicit\nreconstruction = muscl\ncfl = 0.4\n");
    CHECK(c.left.u == 0.5);
    CHECK(c.right.u == 0.0);
    CHECK(c.x0 == 0.3);
    CHECK(c.padding_left == 0.0);
    CHECK(c.scheme.scheme == SchemeKind::explicit_segregated);
    CHECK(c.scheme.reconstruction == Reconstruction::muscl);
}

TEST_CASE("stabilization exponents in the config") {
    const RunConfig ok = parse_config(
        "[problem]\npreset = sod\n[grid]\ncells = 10\n[scheme]\ntype = explicit\nstabilization_q = 3\nstabilization_alpha = 1.5\n");
    REQUIRE(ok.scheme.stabilization.has_value());
    CHECK(ok.scheme.stabilization->q == 3.0);
    const std::string err = error_of(
        "[problem]\npreset = sod\n[grid]\ncells = 10\n[scheme]\nstabilization_q = 2\nstabilization_alpha = 1\n");
    CHECK(err.find("stabilization_alpha") != std::string::npos);
}

TEST_CASE("errors name the offending key") {
    CHECK(error_of("[problem]\npreset = sod\n[grid]\ncells = 10\nsize = 3\n").find("grid.size") != std::string::npos);
    CHECK(error_of("[problem]\npreset = sod\n[grid]\ncells = 10\n[scheme]\ntype = implicit\n").find("scheme.type") !=
          std::string::npos);
    CHECK(error_of("[problem]\npreset = sod\n").find("grid.cells") != std::string::npos);
    CHECK(error_of("[problem]\npreset = sod\n[grid]\ncells = ten\n").find("grid.cells") != std::string::npos);
    CHECK(error_of("[problem]\nleft_rho = 1\n[grid]\ncells = 10\n").find("problem.") != std::string::npos);
    CHECK(error_of("[problem]\npreset = sod\n[grid]\ncells = 10\n[extra]\na = 1\n").find("extra") != std::string::npos);
    CHECK(error_of("[problem]\npreset = sod\n[grid]\ncells = 10\n[scheme]\ncfl = 1.5\n").find("cfl") != std::string::npos);
    CHECK_THROWS_AS(load_config("/nonexistent/ieuler.ini"), ConfigError);
}

TEST_CASE("zero end time echoes the initial state") {
    RunConfig c = preset_config("sod", 20, SchemeKind::pressure_correction);
    c.scheme.end_time = 0.0;
    const RunReport r = run_case(c);
    CHECK_FALSE(r.failed);
    CHECK(r.steps == 0);
    CHECK(r.final_state.rho == r.initial.rho);
    CHECK(r.final_state.e == r.initial.e);
    CHECK(r.l1_rho_error == 0.0);
}

TEST_CASE("last step lands on the end time") {
    for (auto k : {SchemeKind::pressure_correction, SchemeKind::explicit_segregated}) {
        RunConfig c = preset_config("sod", 50, k);
        c.scheme.end_time = 0.0123;
        const RunReport r = run_case(c);
        CHECK(r.final_state.time == 0.0123);
        CHECK(r.diagnostics.log.back().time == 0.0123);
    }
}

TEST_CASE("L1 error of the exact solution is zero") {
    RunConfig c = preset_config("sod", 40, SchemeKind::pressure_correction);
    c.scheme.end_time = 0.05;
    RunReport r = run_case(c);
    const auto exact = exact_on_window(r);
    for (std::size_t k = 0; k < exact.size(); ++k) r.final_state.rho[r.window_begin + k] = exact[k].rho;
    CHECK(l1_density_error(r) == 0.0);
}

TEST_CASE("automatic padding") {
    CHECK(padding_cells(preset_config("sod", 100, SchemeKind::pressure_correction)) == std::pair<std::size_t, std::size_t>{0, 0});
    const auto [l, r] = padding_cells(preset_config("toro-test5", 100, SchemeKind::pressure_correction));
    const double h = 0.01;
    // fastest wall signal: |u| + c of each side over the run
    const double cl = std::sqrt(1.4 * 460.894 / 5.99924), cr = std::sqrt(1.4 * 46.0950 / 5.99242);
    CHECK(l * h >= (19.5975 + cl) * 0.035);
    CHECK(r * h >= (6.19633 + cr) * 0.035);
}

TEST_CASE("runs are deterministic") {
    RunConfig c = preset_config("toro-test5", 60, SchemeKind::explicit_segregated);
    c.scheme.end_time = 0.01;
    const fs::path a = scratch("det_a"), b = scratch("det_b");
    write_outputs(run_case(c), a.string());
    write_outputs(run_case(c), b.string());
    for (const char* f : {"fields.csv", "exact.csv", "diag.csv", "plot.gp-data"})
        CHECK(read_file(a / f) == read_file(b / f));
}

TEST_CASE("outputs of a uniform state") {
    RunConfig c = preset_config("sod", 16, SchemeKind::explicit_segregated);
    c.right = c.left;
    c.scheme.end_time = 0.01;
    const fs::path dir = scratch("uniform");
    write_outputs(run_case(c), dir.string());
    const auto rows = lines(read_file(dir / "fields.csv"));
    REQUIRE(rows.size() == 17);
    CHECK(rows[0] == "x,rho,u,p,e,eta");
    for (std::size_t i = 1; i < rows.size(); ++i) {
        const auto tail = rows[i].substr(rows[i].find(','));
        CHECK(tail == rows[1].substr(rows[1].find(',')));
    }
    CHECK(lines(read_file(dir / "exact.csv"))[0] == "x,rho,u,p,e");
    CHECK(lines(read_file(dir / "diag.csv"))[0] ==
          "step,time,dt,mass,energy,scheme_energy,global_entropy,max_entropy_residual,cfl_entropy_dt,picard_iterations");
    CHECK(lines(read_file(dir / "audit.txt"))[0] == "# ieuler audit, schema 1");
}

TEST_CASE("fields.csv has one row per configured cell, padding excluded") {
    RunConfig c = preset_config("toro-test5", 40, SchemeKind::explicit_segregated);
    c.scheme.end_time = 0.005;
    const RunReport r = run_case(c);
    CHECK(r.grid.n_cells() > 40);
    const fs::path dir = scratch("rows");
    write_outputs(r, dir.string());
    CHECK(lines(read_file(dir / "fields.csv")).size() == 41);
    CHECK(lines(read_file(dir / "exact.csv")).size() == 41);
}

TEST_CASE("exact profile of Test 5 has the two star plateaus") {
    RunConfig c = preset_config("toro-test5", 400, SchemeKind::explicit_segregated);
    c.theorem_audits = false;
    const RunReport r = run_case(c);
    const fs::path dir = scratch("t5");
    write_outputs(r, dir.string());
    const auto rows = lines(read_file(dir / "exact.csv"));
    const RiemannSolution s = solve_riemann(c.left, c.right, c.scheme.gamma);
    int on_left_star = 0, on_right_star = 0;
    for (std::size_t i = 1; i < rows.size(); ++i) {
        std::istringstream in(rows[i]);
        std::string x, rho;
        std::getline(in, x, ',');
        std::getline(in, rho, ',');
        on_left_star += std::abs(std::stod(rho) - s.rho_star_left) < 1e-12;
        on_right_star += std::abs(std::stod(rho) - s.rho_star_right) < 1e-12;
    }
    CHECK(on_left_star > 50);
    CHECK(on_right_star > 20);
}

TEST_CASE("golden Sod output") {
    // regression baseline recorded from this code; guards the output schema and format
    RunConfig c = preset_config("sod", 16, SchemeKind::pressure_correction);
    c.scheme.end_time = 0.05;
    const fs::path dir = scratch("golden");
    write_outputs(run_case(c), dir.string());
    const auto got = lines(read_file(dir / "fields.csv"));
    const auto want = lines(read_file(fs::path(IEULER_TEST_DATA) / "golden_sod16_fields.csv"));
    REQUIRE(got.size() == want.size());
    CHECK(got[0] == want[0]);
    for (std::size_t i = 1; i < got.size(); ++i) {
        std::istringstream a(got[i]), b(want[i]);
        for (std::string u, v; std::getline(a, u, ',') && std::getline(b, v, ',');)
            CHECK(std::stod(u) == doctest::Approx(std::stod(v)).epsilon(1e-12));
    }
}

TEST_CASE("step failures are reported with partial output") {
    RunConfig c = preset_config("sod", 30, SchemeKind::explicit_segregated);
    c.fixed_dt = 0.1;
    const RunReport r = run_case(c);
    CHECK(r.failed);
    CHECK(r.steps == 0);
    CHECK(r.failure.find("explicit step refused") != std::string::npos);
    const fs::path dir = scratch("failed");
    write_outputs(r, dir.string());
    CHECK(read_file(dir / "audit.txt").find("status = failed") != std::string::npos);
}

TEST_CASE("audits of a state at rest") {
    RunConfig c = preset_config("sod", 30, SchemeKind::explicit_segregated);
    c.right = c.left;
    c.scheme.end_time = 0.05;
    for (auto k : {SchemeKind::pressure_correction, SchemeKind::explicit_segregated}) {
        c.scheme.scheme = k;
        const RunReport r = run_case(c);
        REQUIRE_FALSE(r.diagnostics.bounds.empty());
        for (const auto& b : r.diagnostics.bounds) {
            INFO(b.name);
            CHECK(std::abs(b.measured) <= 1e-14);
            CHECK(std::abs(b.bound) <= 1e-14);
        }
    }
}

}
