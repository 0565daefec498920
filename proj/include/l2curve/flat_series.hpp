#pragma once

#include "l2curve/weights.hpp"

#include <vector>

namespace l2c {

// Symbolic sections sum c * z^a (ln z)^l mu^q e_i over a flat multivalued
// frame e_1..e_d, with mu = 1/(2 pi i) kept formal so that identities are
// checked exactly in Q(i).  Enough to express the Deligne frame
// xi(e) = z^beta exp(mu N ln z) e and to differentiate it.
struct FlatTerm {
    Rational zpow;
    int logpow = 0;
    int mupow = 0;
    int comp = 0;
    GaussianRational c;
};

struct FlatSection {
    int dim = 0;
    std::vector<FlatTerm> terms;

    static FlatSection zero(int dim) { return {dim, {}}; }
    void combine();
    bool is_zero() const;
    FlatSection operator+(const FlatSection& o) const;
    FlatSection operator-(const FlatSection& o) const;
    FlatSection scaled(const GaussianRational& f) const;
    FlatSection mu_shifted(int dq) const;
};

// Image under e_i -> sum_j N(j,i) e_j.
FlatSection apply_matrix(const Matrix<GaussianRational>& n_mat, const FlatSection& s);

// d/dz coefficient of the flat connection: z^a (ln z)^l -> a z^{a-1} (ln z)^l
// + l z^{a-1} (ln z)^{l-1} componentwise.
FlatSection nabla_dz(const FlatSection& s);

// xi(e) = z^beta exp(mu N ln z) e for a flat vector e.
FlatSection deligne_section(const Rational& beta, const Matrix<GaussianRational>& n_mat,
                            const std::vector<GaussianRational>& e);

// f * xi(e) with f = sum_m a_m z^{m + shift}.
FlatSection series_times_section(const std::vector<GaussianRational>& coeffs, int first_power,
                                 const Rational& shift, const Rational& beta,
                                 const Matrix<GaussianRational>& n_mat, const std::vector<GaussianRational>& e);

// The explicit primitive
//   nu = sum_j (-1)^j sum_m a_m (beta+m+1)^{j-1} z^{m+1+beta}
//        exp(mu N ln z) mu^j N^j e
// solving nabla(nu) = (sum_m a_m z^m) dz (x) xi(e); requires beta in (-1, 0]
// and N nilpotent.
FlatSection nabla_primitive_series(const std::vector<GaussianRational>& coeffs, const Rational& beta,
                                   const Matrix<GaussianRational>& n_mat,
                                   const std::vector<GaussianRational>& e, const NumericConfig& cfg);

// Removes a simple pole a_{-1}/z against a W_{-2} target: solves N e_tilde =
// e inside W_0 and returns the primitive term a_{-1} mu^{-1} xi(e_tilde),
// whose nabla is exactly a_{-1} dz/z (x) xi(e).
struct ResidueReduction {
    std::vector<GaussianRational> e_tilde;
    FlatSection primitive_term;
};
ResidueReduction residue_reduction(const GaussianRational& a_minus1, const Matrix<GaussianRational>& n_mat,
                                   const std::vector<GaussianRational>& e, const NumericConfig& cfg);

} // namespace l2c
