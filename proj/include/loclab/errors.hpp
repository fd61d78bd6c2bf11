#pragma once

#include <stdexcept>
#include <string>

namespace loclab {

// Invalid user-supplied configuration (grid shapes, schema violations, ...).
struct config_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Mismatched grids or sample lengths between operands.
struct shape_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Ill-conditioned or unusable input data (e.g. non-positive norms in a fit).
struct data_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Breakdown inside a numerical kernel (linear solve, non-finite samples).
struct numerical_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace loclab
