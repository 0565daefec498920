#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace l2c {

// Input rejected by a module-level validity check.
struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A monodromy matrix with an eigenvalue off the unit circle.
struct NotQuasiUnitary : std::domain_error {
    using std::domain_error::domain_error;
};

// Unit-circle eigenvalue whose rotation number is not available to the
// requested backend (irrational, or outside Q(i) in exact mode).
struct IrrationalRotation : std::domain_error {
    using std::domain_error::domain_error;
};

// The (beta = 0, k >= -1) residue obstruction of the mode solver; carries the
// offending constant g0.
struct ObstructionError : std::domain_error {
    ObstructionError(const std::string& what, std::complex<double> g0)
        : std::domain_error(what), g0(g0) {}
    std::complex<double> g0;
};

// A violated internal invariant (never a user input problem).
struct InternalError : std::logic_error {
    using std::logic_error::logic_error;
};

} // namespace l2c
