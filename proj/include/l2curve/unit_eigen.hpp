#pragma once

#include "l2curve/errors.hpp"
#include "l2curve/matrix.hpp"

#include <vector>

namespace l2c {

// One piece of the decomposition V = (+)_alpha Ker(T - e^{2 pi i alpha})^n.
// In float mode, and for exact eigenvalues lying in Q(i), `alphas` is a
// singleton.  In exact mode an eigenvalue outside Q(i) is carried together
// with its Galois conjugates over Q(i): `basis` spans the sum of the
// conjugate eigenspaces (the smallest Q(i)-rational invariant subspace) and
// `alphas` lists each conjugate's rotation number.  All conjugates share one
// Jordan structure.
template <class K> struct UnitEigenPart {
    std::vector<RotationNumber> alphas;
    Matrix<K> basis;
};

// Polynomials over Q(i), ascending coefficients.  Enough machinery for
// characteristic polynomials, cyclotomic factors and Jordan-Chevalley.
struct PolyQ {
    std::vector<GaussianRational> c;

    int degree() const;
    void trim();
    static PolyQ x_power(int n);
    static PolyQ constant(GaussianRational v);
    PolyQ derivative() const;
    PolyQ monic() const;
    Matrix<GaussianRational> eval(const Matrix<GaussianRational>& m) const;

    friend PolyQ operator*(const PolyQ& a, const PolyQ& b);
    friend PolyQ operator-(const PolyQ& a, const PolyQ& b);
};
PolyQ poly_divmod(const PolyQ& a, const PolyQ& b, PolyQ* remainder);
PolyQ poly_gcd(PolyQ a, PolyQ b);
PolyQ cyclotomic(int q);

PolyQ charpoly(const Matrix<GaussianRational>& m);

// Semisimple factor of the multiplicative Jordan decomposition T = T_s T_u,
// computed over Q(i) by Newton iteration on the squarefree part of the
// characteristic polynomial.
Matrix<GaussianRational> semisimple_part(const Matrix<GaussianRational>& t);

std::vector<UnitEigenPart<GaussianRational>> eig_unit_circle(const Matrix<GaussianRational>& m,
                                                             const NumericConfig& cfg);
std::vector<UnitEigenPart<Complex>> eig_unit_circle(const Matrix<Complex>& m, const NumericConfig& cfg);

// Eigenvalues of a complex matrix (float path, also used to classify exact
// failures as off-circle versus irrational).
std::vector<Complex> complex_eigenvalues(const Matrix<Complex>& m);

// Eigenvalue clusters with defect-aware radius.  Individual eigenvalues of a
// Jordan block perturb like eps^(1/m); their mean is first-order accurate, so
// circle tests and rotation numbers are read off cluster means.
struct EigenCluster {
    Complex mean;
    int multiplicity = 0;
};
std::vector<EigenCluster> eigenvalue_clusters(const Matrix<Complex>& m);

// All cluster means on the unit circle, within max(tau, 1e-7).
bool quasi_unitary_numeric(const Matrix<Complex>& m, double tau);

template <class K> Matrix<Complex> to_complex_matrix(const Matrix<K>& m) {
    Matrix<Complex> r(m.rows(), m.cols());
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) r(i, j) = FieldTraits<K>::to_complex(m(i, j));
    return r;
}

} // namespace l2c
