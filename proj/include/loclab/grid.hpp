#pragma once

#include <cstddef>
#include <memory>
#include <vector>

namespace loclab {

/// Uniform spatial lattice on [x_min, x_max) together with its conjugate
/// wavenumber lattice in standard DFT ordering, k in [-pi/dx, pi/dx).
/// Immutable after construction; share freely across workers.
struct Grid {
    double x_min = 0.0;
    double x_max = 0.0;
    std::size_t n_points = 0;
    double dx = 0.0;
    std::vector<double> k_values;

    double position(std::size_t i) const { return x_min + static_cast<double>(i) * dx; }
    std::vector<double> positions() const;
    bool same_as(const Grid& other) const {
        return x_min == other.x_min && x_max == other.x_max && n_points == other.n_points;
    }
};

using GridPtr = std::shared_ptr<const Grid>;

/// n_points must be a power of two >= 16 and x_max > x_min.
GridPtr make_grid(double x_min, double x_max, std::size_t n_points);

}  // namespace loclab
