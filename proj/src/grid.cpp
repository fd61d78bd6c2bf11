#include "loclab/grid.hpp"

#include <cmath>
#include <string>

#include "loclab/errors.hpp"

namespace loclab {

std::vector<double> Grid::positions() const {
    std::vector<double> xs(n_points);
    for (std::size_t i = 0; i < n_points; ++i) xs[i] = position(i);
    return xs;
}

GridPtr make_grid(double x_min, double x_max, std::size_t n_points) {
    if (!(x_max > x_min))
        throw config_error("grid: x_max (" + std::to_string(x_max) +
                           ") must exceed x_min (" + std::to_string(x_min) + ")");
    if (n_points < 16 || (n_points & (n_points - 1)) != 0)
        throw config_error("grid: n_points (" + std::to_string(n_points) +
                           ") must be a power of two >= 16");
    auto g = std::make_shared<Grid>();
    g->x_min = x_min;
    g->x_max = x_max;
    g->n_points = n_points;
    g->dx = (x_max - x_min) / static_cast<double>(n_points);
    g->k_values.resize(n_points);
    const double dk = 2.0 * M_PI / (x_max - x_min);
    const std::size_t half = n_points / 2;
    for (std::size_t j = 0; j < n_points; ++j) {
        const double idx = (j < half) ? static_cast<double>(j)
                                      : static_cast<double>(j) - static_cast<double>(n_points);
        g->k_values[j] = dk * idx;
    }
    return g;
}

}  // namespace loclab
