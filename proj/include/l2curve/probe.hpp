#pragma once

#include "l2curve/disk.hpp"

#include <random>

namespace l2c {

// Local flat model of a LocalType: one component per Jordan chain level, with
// N mapping each component to `next` (coefficient 1).  Forms valued in the
// model couple down the chains through nabla xi(e) = dz/z (beta xi(e) +
// mu xi(Ne)), mu = 1/(2 pi i).
struct ModelComponent {
    Rational beta{0};
    int weight = 0;
    int next = -1;
    int prev = -1;
};
std::vector<ModelComponent> chain_model(const LocalType& t);

// Componentwise mode forms; all share one degree and radius.
struct ChainForm {
    int degree = 0;
    double radius = 0.5;
    std::vector<ModeForm> comps;

    static ChainForm zero(const std::vector<ModelComponent>& model, int degree, double radius);
    bool is_zero(double eps) const;
};

// Full covariant differential including the chain coupling.
ChainForm chain_differential(const std::vector<ModelComponent>& model, const ChainForm& phi);

// sqrt of the sum of component norm squares (L2-adapted frame).
WeightedNorm chain_norm(const ChainForm& phi, const QuadratureControl& qc);

// Weight-descending graded solve with the residue and critical-channel lifts;
// returns the total primitive and the final residual.
struct CascadeResult {
    ChainForm primitive;
    ChainForm residual;
    double rel_residual = 0.0;
    double bound_ratio = 0.0;
    bool solved = false;
};
CascadeResult cascade_solve(const std::vector<ModelComponent>& model, const ChainForm& eta,
                            const NumericConfig& cfg, const QuadratureControl& qc);

struct ProbeReport {
    int trials = 0;
    int solved = 0;
    double max_rel_residual = 0.0;
    double max_bound_ratio = 0.0;
    double max_bound_ratio_refined = 0.0; // doubled quadrature resolution
    bool success = false;
};

// Generates seeded random closed chain forms (degrees 1 and 2) compatible
// with the local type, runs the cascade and aggregates residuals and bound
// ratios.  success = every trial solved with residual <= tau * input norm.
ProbeReport local_vanishing_probe(const LocalType& t, int trials, std::uint64_t seed, const NumericConfig& cfg);

} // namespace l2c
