#pragma once

#include <cstddef>
#include <utility>
#include <vector>

namespace ieuler {

// Cells K = 0..n-1, faces i = 0..n. Face i separates cell i-1 (left) from
// cell i (right); faces 0 and n lie on the walls.
struct Grid {
    double domain_left = 0.0;
    double domain_right = 0.0;
    std::vector<double> faces;
    std::vector<double> centers;
    std::vector<double> widths;

    std::size_t n_cells() const noexcept { return widths.size(); }
    std::size_t n_faces() const noexcept { return faces.size(); }
    double length() const noexcept { return domain_right - domain_left; }
    bool is_boundary_face(std::size_t i) const noexcept { return i == 0 || i + 1 == faces.size(); }

    /// Width of cell 0; equals every width on a uniform grid.
    double cell_width() const noexcept { return widths.front(); }

    /// Measure of the dual cell around face i. Wall faces own a single half cell.
    double dual_volume(std::size_t i) const noexcept;

    /// End points of the dual cell around face i.
    std::pair<double, double> dual_extent(std::size_t i) const noexcept;
};

Grid build_uniform_grid(double domain_left, double domain_right, std::size_t n_cells);

struct MeshMetrics {
    double max_diameter = 0.0;             // largest cell width
    double min_volume_to_perimeter = 0.0;  // min |K| / sum of face measures
    double shape_constant = 0.0;           // max (|s| + |s'|) h_K / |K|
    std::size_t max_faces_per_cell = 0;
};

MeshMetrics mesh_metrics(const Grid& grid);

}  // namespace ieuler
