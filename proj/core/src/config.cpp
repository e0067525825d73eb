#include "ieuler/config.hpp"

#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "ieuler/errors.hpp"
#include "ieuler/riemann.hpp"

namespace ieuler {

namespace pt = boost::property_tree;

namespace {

const std::map<std::string, std::set<std::string>>& known_keys() {
    static const std::map<std::string, std::set<std::string>> keys{
        {"problem", {"preset", "gamma", "x0", "end_time", "domain_left", "domain_right", "left_rho", "left_u",
                     "left_p", "right_rho", "right_u", "right_p"}},
        {"grid", {"cells", "padding", "padding_left", "padding_right"}},
        {"scheme", {"type", "reconstruction", "cfl", "picard_tol", "picard_max_iter", "corrective_source",
                    "stabilization_q", "stabilization_alpha", "dt", "dt_over_h"}},
        {"output", {"dir", "cadence", "residual_snapshots", "entropy_residuals", "theorem_audits"}},
    };
    return keys;
}

template <class T>
std::optional<T> get(const pt::ptree& root, const std::string& path) {
    const auto node = root.get_child_optional(pt::ptree::path_type(path, '.'));
    if (!node) return std::nullopt;
    const std::string raw = node->data();
    if constexpr (std::is_same_v<T, std::string>) {
        return raw;
    } else if constexpr (std::is_same_v<T, bool>) {
        if (raw == "true" || raw == "yes" || raw == "on" || raw == "1") return true;
        if (raw == "false" || raw == "no" || raw == "off" || raw == "0") return false;
        throw ConfigError(path + ": expected a boolean, got '" + raw + "'");
    } else {
        std::istringstream in(raw);
        T v{};
        in >> v;
        if (in.fail() || !(in >> std::ws).eof()) throw ConfigError(path + ": cannot parse '" + raw + "'");
        return v;
    }
}

double parse_padding(const pt::ptree& root, const std::string& key, double fallback) {
    const auto raw = get<std::string>(root, key);
    if (!raw) return fallback;
    if (*raw == "auto") return -1.0;
    if (*raw == "none") return 0.0;
    const auto v = get<double>(root, key);
    if (*v < 0.0) throw ConfigError(key + ": padding must be non-negative, 'auto' or 'none'");
    return *v;
}

}  // namespace

void RunConfig::validate() const {
    scheme.validate();
    if (n_cells < 2) throw ConfigError("grid.cells: at least two cells are required");
    if (!(domain_right > domain_left)) throw ConfigError("problem.domain_right must exceed problem.domain_left");
    if (!(x0 > domain_left && x0 < domain_right)) throw ConfigError("problem.x0 must lie inside the domain");
    if (!(left.rho > 0.0 && left.p > 0.0)) throw ConfigError("problem.left_*: density and pressure must be positive");
    if (!(right.rho > 0.0 && right.p > 0.0)) throw ConfigError("problem.right_*: density and pressure must be positive");
    if (fixed_dt && !(*fixed_dt > 0.0)) throw ConfigError("scheme.dt must be positive");
    if (dt_over_h && !(*dt_over_h > 0.0)) throw ConfigError("scheme.dt_over_h must be positive");
    if (fixed_dt && dt_over_h) throw ConfigError("scheme.dt and scheme.dt_over_h are mutually exclusive");
    if (output_cadence < 1) throw ConfigError("output.cadence must be at least 1");
}

RunConfig parse_config(const std::string& text) {
    pt::ptree root;
    try {
        std::istringstream in(text);
        pt::read_ini(in, root);
    } catch (const pt::ini_parser_error& e) {
        throw ConfigError(std::string("config: ") + e.message() + " (line " + std::to_string(e.line()) + ")");
    }
    for (const auto& [section, body] : root) {
        const auto it = known_keys().find(section);
        if (it == known_keys().end()) {
            if (body.empty()) throw ConfigError(section + ": keys must belong to a section");
            throw ConfigError(section + ": unknown section");
        }
        for (const auto& [key, value] : body)
            if (!it->second.count(key)) throw ConfigError(section + "." + key + ": unknown key");
    }

    RunConfig c;
    if (const auto name = get<std::string>(root, "problem.preset")) {
        const RiemannPreset p = find_preset(*name);
        c.preset = p.name;
        c.left = p.left;
        c.right = p.right;
        c.x0 = p.x0;
        c.domain_left = p.domain_left;
        c.domain_right = p.domain_right;
        c.scheme.gamma = p.gamma;
        c.scheme.end_time = p.end_time;
    } else {
        for (const char* key : {"problem.left_rho", "problem.left_p", "problem.right_rho", "problem.right_p", "problem.end_time"})
            if (!root.get_child_optional(pt::ptree::path_type(key, '.')))
                throw ConfigError(std::string(key) + ": missing (required without a preset)");
    }
    auto set = [&](auto& field, const std::string& key) {
        using T = std::decay_t<decltype(field)>;
        if (auto v = get<T>(root, key)) field = *v;
    };
    set(c.scheme.gamma, "problem.gamma");
    set(c.x0, "problem.x0");
    set(c.scheme.end_time, "problem.end_time");
    set(c.domain_left, "problem.domain_left");
    set(c.domain_right, "problem.domain_right");
    set(c.left.rho, "problem.left_rho");
    set(c.left.u, "problem.left_u");
    set(c.left.p, "problem.left_p");
    set(c.right.rho, "problem.right_rho");
    set(c.right.u, "problem.right_u");
    set(c.right.p, "problem.right_p");

    const auto cells = get<long>(root, "grid.cells");
    if (!cells) throw ConfigError("grid.cells: missing");
    if (*cells < 2) throw ConfigError("grid.cells: at least two cells are required");
    c.n_cells = static_cast<std::size_t>(*cells);
    const double pad = parse_padding(root, "grid.padding", -1.0);
    c.padding_left = parse_padding(root, "grid.padding_left", pad);
    c.padding_right = parse_padding(root, "grid.padding_right", pad);

    if (const auto t = get<std::string>(root, "scheme.type")) {
        if (*t == "pressure_correction" || *t == "pc") c.scheme.scheme = SchemeKind::pressure_correction;
        else if (*t == "explicit") c.scheme.scheme = SchemeKind::explicit_segregated;
        else throw ConfigError("scheme.type: expected 'pressure_correction' or 'explicit', got '" + *t + "'");
    }
    if (const auto r = get<std::string>(root, "scheme.reconstruction")) {
        if (*r == "upwind") c.scheme.reconstruction = Reconstruction::upwind;
        else if (*r == "muscl") c.scheme.reconstruction = Reconstruction::muscl;
        else throw ConfigError("scheme.reconstruction: expected 'upwind' or 'muscl', got '" + *r + "'");
    }
    set(c.scheme.cfl_fraction, "scheme.cfl");
    set(c.scheme.picard_tol, "scheme.picard_tol");
    set(c.scheme.picard_max_iter, "scheme.picard_max_iter");
    set(c.scheme.corrective_source, "scheme.corrective_source");
    const auto q = get<double>(root, "scheme.stabilization_q");
    const auto alpha = get<double>(root, "scheme.stabilization_alpha");
    if (q.has_value() != alpha.has_value())
        throw ConfigError("scheme.stabilization_q and scheme.stabilization_alpha must be given together");
    if (q) c.scheme.stabilization = Stabilization{*q, *alpha};
    c.fixed_dt = get<double>(root, "scheme.dt");
    c.dt_over_h = get<double>(root, "scheme.dt_over_h");

    set(c.output_dir, "output.dir");
    if (const auto cad = get<long>(root, "output.cadence")) {
        if (*cad < 1) throw ConfigError("output.cadence must be at least 1");
        c.output_cadence = static_cast<std::size_t>(*cad);
    }
    if (const auto snaps = get<long>(root, "output.residual_snapshots")) {
        if (*snaps < 0) throw ConfigError("output.residual_snapshots must be non-negative");
        c.residual_snapshots = static_cast<std::size_t>(*snaps);
    }
    set(c.entropy_residuals, "output.entropy_residuals");
    set(c.theorem_audits, "output.theorem_audits");

    c.validate();
    return c;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

RunConfig preset_config(const std::string& preset, std::size_t n_cells, SchemeKind scheme) {
    const RiemannPreset p = find_preset(preset);
    RunConfig c;
    c.preset = p.name;
    c.left = p.left;
    c.right = p.right;
    c.x0 = p.x0;
    c.domain_left = p.domain_left;
    c.domain_right = p.domain_right;
    c.n_cells = n_cells;
    c.scheme.gamma = p.gamma;
    c.scheme.end_time = p.end_time;
    c.scheme.scheme = scheme;
    c.validate();
    return c;
}

}  // namespace ieuler
