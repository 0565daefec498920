#pragma once

#include "l2curve/radial.hpp"
#include "l2curve/weights.hpp"

#include <optional>
#include <vector>

namespace l2c {

// The frame section xi with Hodge norm ||xi||^2 ~ r^{2 beta} L^k.
struct FrameWeight {
    Rational beta{0};
    int k = 0;
};

// One Fourier mode e^{i n theta} of a form on the punctured disk of radius R,
// valued in the frame line.  Channels by degree:
//   0: c0,  1: c_dr dr + c_dtheta dtheta,  2: c_area dr ^ dtheta.
struct ModeChannels {
    int n = 0;
    RadialFn c0;
    RadialFn c_dr;
    RadialFn c_dtheta;
    RadialFn c_area;
};

struct ModeForm {
    int degree = 0;
    FrameWeight frame;
    double radius = 0.5;
    std::vector<ModeChannels> modes;

    ModeChannels& mode(int n);
    const ModeChannels* find_mode(int n) const;
    bool is_zero(double eps = 0.0) const;
    ModeForm operator+(const ModeForm& o) const;
    ModeForm operator-(const ModeForm& o) const;
    ModeForm scaled(Complex c) const;
};

// Poincare-weighted L2 norm: 0-form measure r^{2 beta - 1} |ln r|^{k-2},
// dr-channel r^{2 beta + 1} |ln r|^k, dtheta-channel r^{2 beta - 1} |ln r|^k,
// area forms r^{2 beta + 1} |ln r|^{k+2}.
struct WeightedNorm {
    bool finite = true;
    double value = 0.0;      // the norm, not its square
    double squared = 0.0;
};
WeightedNorm weighted_norm(const ModeForm& phi, const QuadratureControl& qc);

// Closedness defect D(eta) of a degree-1 mode form at the graded level
// (connection d + beta dz/z on the frame line).
ModeForm graded_differential(const ModeForm& phi);

struct SolveModeResult {
    ModeForm primitive;           // degree one lower than the input
    ModeForm residual;            // eta - D nu, the documented channels only
    double bound_ratio = 0.0;     // ||nu|| / ||eta||
    WeightedNorm input_norm;
    WeightedNorm primitive_norm;
    WeightedNorm residual_norm;
};

// Fourier-mode primitive for a closed degree-1 form; obstruction error when
// (beta = 0, k >= -1) meets a nonzero constant dtheta mode.  With
// allow_critical the k = 1 radial channel integrates termwise (monomial-log
// inputs) instead of being returned as the documented residual.
SolveModeResult solve_mode(const ModeForm& eta, const NumericConfig& cfg, const QuadratureControl& qc,
                           bool allow_critical = false);

// Degree-2 analogue; obstruction channel (beta = 0, k = -1).
SolveModeResult solve_mode_degree2(const ModeForm& eta, const NumericConfig& cfg, const QuadratureControl& qc,
                                   bool allow_critical = false);

// dbar g = f for a single monomial mode f = c r^a e^{i n theta} on the
// dzbar-channel, frame weight obeying beta (k - 1) != 0.
struct DbarResult {
    ModeForm solution;        // degree 0
    double bound_ratio = 0.0; // ||g xi|| / ||f dzbar xi||
};
DbarResult dbar_mode_solve(Complex coeff, const Rational& a, int n, const FrameWeight& frame, double radius,
                           const NumericConfig& cfg, const QuadratureControl& qc);

// Planar Poincare-lemma constant 2^n sigma_{n-1} Diam^{n+2} / int dist,
// n = 2 fixed.
double il_constant(double diameter, double dist_integral);

// Least-squares fit of log ||xi(r)||^2 = c + (2 beta) log r + k log |log r|.
struct GrowthFit {
    double two_beta = 0.0;
    double k = 0.0;
};
GrowthFit growth_fit(const std::vector<std::pair<double, double>>& samples);

} // namespace l2c
