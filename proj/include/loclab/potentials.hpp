#pragma once

#include <variant>
#include <vector>

#include "loclab/grid.hpp"

namespace loclab {

struct Free {};

/// V0 on [a, b), zero elsewhere. Jump points take their right-limit value.
struct RectangularBarrier {
    double a = -1.0;
    double b = 1.0;
    double v0 = 1.0;
};

/// Two finite walls at [a1, a2) and [a3, a4); v_wall stands in for an
/// infinite wall in split-operator runs. Crank-Nicolson runs may instead
/// impose exact Dirichlet zeros on the wall intervals.
struct DoubleWallTrap {
    double a1 = -3.0;
    double a2 = -2.0;
    double a3 = 2.0;
    double a4 = 3.0;
    double v_wall = 1e4;
};

enum class SmoothForm { GaussianBump, Sech2 };

struct SmoothBounded {
    SmoothForm form = SmoothForm::GaussianBump;
    double amplitude = 1.0;
    double center = 0.0;
    double width = 1.0;
};

/// Nearest-neighbor lookup table; x must be strictly increasing.
struct Tabulated {
    std::vector<double> x;
    std::vector<double> v;
};

using PotentialSpec = std::variant<Free, RectangularBarrier, DoubleWallTrap, SmoothBounded, Tabulated>;

/// Throws config_error on geometry violations (a >= b, unordered walls, ...).
void validate_potential(const PotentialSpec& spec);

double eval_potential(const PotentialSpec& spec, double x);

std::vector<double> sample_potential(const PotentialSpec& spec, const Grid& grid);

bool is_free(const PotentialSpec& spec);

struct KatoConstants {
    double a = 0.0;
    double b = 0.0;
};

/// Relative bound of V against the kinetic term: every catalog potential is
/// bounded, so (a, b) = (0, sup|V|).
KatoConstants kato_constants(const PotentialSpec& spec);

}  // namespace loclab
