#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "ieuler/state.hpp"

namespace ieuler {

struct RunConfig {
    std::string preset = "custom";
    Primitive left;
    Primitive right;
    double x0 = 0.5;
    double domain_left = 0.0;
    double domain_right = 1.0;
    std::size_t n_cells = 0;

    // Extra cells beyond each end of the domain, so that waves emitted by the
    // walls cannot reach the measured window before end_time. Negative = automatic.
    double padding_left = -1.0;
    double padding_right = -1.0;

    SchemeConfig scheme;
    std::optional<double> fixed_dt;
    std::optional<double> dt_over_h;

    std::string output_dir = "out";
    std::size_t output_cadence = 1;
    std::size_t residual_snapshots = 0;  // number of entropy residual fields kept
    bool entropy_residuals = true;
    bool theorem_audits = true;
    // Times before end_time at which the state is kept; steps are shortened to hit them.
    std::vector<double> capture_times;

    void validate() const;
};

/// INI document with sections [problem], [grid], [scheme], [output].
/// Throws ConfigError naming the offending key.
RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::string& path);

/// A ready-made configuration for a named preset.
RunConfig preset_config(const std::string& preset, std::size_t n_cells, SchemeKind scheme);

}  // namespace ieuler
