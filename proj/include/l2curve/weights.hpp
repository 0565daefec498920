#pragma once

#include "l2curve/unit_eigen.hpp"

#include <map>
#include <vector>

namespace l2c {

// Local spectral datum at a puncture: T = e^{2 pi i alpha} e^{N_alpha} per
// generalized eigenspace, remembered as the rotation number and the Jordan
// block sizes of N_alpha.
struct LocalPart {
    RotationNumber alpha;
    std::vector<int> blocks; // descending
    int dim() const;
};

struct LocalType {
    int n = 0;
    std::vector<LocalPart> parts; // sorted by alpha ascending, unipotent (alpha = 0) last

    const LocalPart* unipotent_part() const;
    int unipotent_dim() const;
};

LocalType make_local_type(int n, std::vector<LocalPart> parts);

template <class K> LocalType local_type(const Matrix<K>& t, const NumericConfig& cfg);

// alpha -> representative of n_p * alpha in (-1, 0]; coinciding targets merge
// their block multisets (scaling a nilpotent preserves Jordan type).
LocalType pullback_local_type(const LocalType& t, int n_p);

// Hodge-norm growth data: ||xi||^2 ~ r^{2 beta} |ln r|^k.
struct GrowthExponent {
    RotationNumber beta;
    int k = 0;
    int multiplicity = 0;
};
std::vector<GrowthExponent> growth_exponents(const LocalType& t);

// dim Gr^W_k for a Jordan block multiset: block of size m contributes one
// basis vector in each weight m-1, m-3, ..., 1-m.
std::map<int, int> graded_weight_dims(const std::vector<int>& blocks);
int weight_dim_leq(const std::vector<int>& blocks, int k); // dim W_k

// Fiber dimensions of the Deligne lattices and their weight refinements.
// d0/d1 are the ranks in the square-integrability complex
// M_0 V^0_* -> Omega^1(log) (x) M_{-2} V^{-1}_*.
struct LatticeDims {
    int n = 0;
    int d0 = 0;
    int d1 = 0;
};
LatticeDims lattice_dims(const LocalType& t);
int deligne_fiber_dim(const LocalType& t, const Rational& beta); // always n
int m_lattice_fiber_dim(const LocalType& t, int k, const Rational& beta);

// Sum over k <= 0 of dim Gr^W_k on the unipotent part.
int local_h0(const LocalType& t);

// Monodromy weight filtration of a nilpotent operator.
template <class K> struct WeightFiltration {
    int k_min = 0;
    int k_max = 0;
    std::vector<Matrix<K>> bases; // basis of W_k at index k - k_min
    std::vector<int> graded;      // dim Gr^W_k at index k - k_min

    int dim_w(int k) const {
        if (bases.empty()) return 0;
        if (k < k_min) return 0;
        if (k > k_max) return bases.back().cols();
        return bases[k - k_min].cols();
    }
    Matrix<K> w_basis(int k, int ambient) const {
        if (bases.empty() || k < k_min) return Matrix<K>(ambient, 0);
        if (k > k_max) return bases.back();
        return bases[k - k_min];
    }
};

template <class K> WeightFiltration<K> weight_filtration(const Matrix<K>& n_mat, const NumericConfig& cfg);

// Direct verification of the two defining axioms (oracle for tests):
// N W_k subset W_{k-2} and N^k : Gr_k -> Gr_{-k} bijective.
template <class K>
bool verify_weight_axioms(const Matrix<K>& n_mat, const WeightFiltration<K>& wf, double tau);

// Coordinates of the restriction of t to the invariant subspace spanned by
// the columns of basis.
template <class K>
Matrix<K> restrict_to_invariant(const Matrix<K>& t, const Matrix<K>& basis, double tau);

} // namespace l2c
