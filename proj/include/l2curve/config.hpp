#pragma once

#include <cstdint>

namespace l2c {

// Read-only numeric configuration, fixed when a computation starts.
struct NumericConfig {
    double tau = 1e-9;          // float-mode comparison tolerance
    int order_cap = 1000;       // matrix_order search cap
    int mode_cap = 32;          // Fourier mode truncation N_max
    int series_cap = 16;        // power series truncation M
    std::uint64_t seed = 1;     // master seed for stochastic entry points
    int samples = 64;           // character-family sample count
};

} // namespace l2c
