#pragma once

#include "l2curve/errors.hpp"
#include "l2curve/scalar.hpp"

#include <vector>

namespace l2c {

// Finite sums of c * r^a * L^b with L = ln(1/r), a rational, b >= 0.  The
// class is closed under the operators appearing in the mode solvers:
// d/dr, multiplication by r^s, and primitives.
struct RadialTerm {
    Rational a;
    int b = 0;
    Complex c{0.0, 0.0};
};

struct RadialFn {
    std::vector<RadialTerm> terms;

    static RadialFn zero() { return {}; }
    static RadialFn monomial(Rational a, int b, Complex c);
    static RadialFn constant(Complex c) { return monomial(Rational(0), 0, c); }

    bool is_zero(double eps = 0.0) const;
    double max_coeff() const;
    void combine();

    RadialFn operator+(const RadialFn& o) const;
    RadialFn operator-(const RadialFn& o) const;
    RadialFn scaled(Complex f) const;
    RadialFn shifted(const Rational& da, int db = 0) const; // * r^da L^db
    RadialFn derivative() const;

    // Antiderivative with F(0) = 0; throws InternalError when a term fails to
    // vanish at 0 (exponent <= 0 there), i.e. the caller picked a divergent
    // branch.
    RadialFn primitive_from_zero() const;
    // -(integral from r to R): F(r) - F(R) for any antiderivative F.
    RadialFn primitive_to_radius(double big_r) const;

    Complex eval(double r) const;
};

// Adaptive quadrature control; `refine` doubles panel counts for the
// stability checks.
struct QuadratureControl {
    double rel_tol = 1e-8;
    int initial_panels = 8;
    int max_doublings = 24;
    int refine = 1;
};

// integral over (0, R) of r^p L^q dr, via u = ln(1/r):
// integral_{u0}^{inf} e^{-(p+1)u} u^q du.  Divergent integrals return
// finite = false.
struct WeightedIntegral {
    bool finite = true;
    double value = 0.0;
};
WeightedIntegral weighted_power_integral(double p, int q, double big_r, const QuadratureControl& qc);

// integral over (0, R) of |f(r)|^2 r^p L^q dr (termwise expansion of |f|^2).
WeightedIntegral weighted_square_integral(const RadialFn& f, const Rational& p, int q, double big_r,
                                          const QuadratureControl& qc);

} // namespace l2c
