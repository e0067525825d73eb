#include "ieuler/grid.hpp"

#include <algorithm>

#include "ieuler/errors.hpp"

namespace ieuler {

double Grid::dual_volume(std::size_t i) const noexcept {
    const std::size_t n = n_cells();
    if (i == 0) return 0.5 * widths[0];
    if (i == n) return 0.5 * widths[n - 1];
    return 0.5 * (widths[i - 1] + widths[i]);
}

std::pair<double, double> Grid::dual_extent(std::size_t i) const noexcept {
    const std::size_t n = n_cells();
    const double lo = i == 0 ? faces[0] : centers[i - 1];
    const double hi = i == n ? faces[n] : centers[i];
    return {lo, hi};
}

Grid build_uniform_grid(double domain_left, double domain_right, std::size_t n_cells) {
    if (!(domain_right > domain_left)) throw ConfigError("grid: domain length must be positive");
    if (n_cells < 2) throw ConfigError("grid: at least two cells are required");

    Grid g;
    g.domain_left = domain_left;
    g.domain_right = domain_right;
    const double h = (domain_right - domain_left) / static_cast<double>(n_cells);
    g.faces.resize(n_cells + 1);
    g.centers.resize(n_cells);
    g.widths.assign(n_cells, h);
    for (std::size_t i = 0; i <= n_cells; ++i)
        g.faces[i] = domain_left + h * static_cast<double>(i);
    g.faces[n_cells] = domain_right;
    for (std::size_t k = 0; k < n_cells; ++k)
        g.centers[k] = domain_left + h * (static_cast<double>(k) + 0.5);
    return g;
}

MeshMetrics mesh_metrics(const Grid& grid) {
    // In 1D every cell has two point faces of unit measure and diameter |K|.
    MeshMetrics m;
    m.min_volume_to_perimeter = grid.widths.front() / 2.0;
    for (double w : grid.widths) {
        m.max_diameter = std::max(m.max_diameter, w);
        m.min_volume_to_perimeter = std::min(m.min_volume_to_perimeter, w / 2.0);
        m.shape_constant = std::max(m.shape_constant, (1.0 + 1.0) * w / w);
    }
    m.max_faces_per_cell = 2;
    return m;
}

}  // namespace ieuler
