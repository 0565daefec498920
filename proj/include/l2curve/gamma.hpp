#pragma once

#include "l2curve/cohomology.hpp"
#include "l2curve/group.hpp"

#include <memory>
#include <random>
#include <vector>

namespace l2c {

// Gamma-invariant subspace of C[Gamma]^m, with the left-translation action
// gamma . (v_1,...,v_m) acting blockwise.
template <class K> struct GammaModule {
    std::shared_ptr<const FiniteGroup> group;
    int multiplicity = 0;
    Matrix<K> basis; // ambient m|Gamma| rows, canonical column basis

    int ambient_dim() const { return multiplicity * group->order(); }
    int dim() const { return basis.cols(); }
};

// Blockwise left translation on C[Gamma]^m.
template <class K> Matrix<K> ambient_action(const FiniteGroup& g, GroupElement x, int multiplicity);

// Right multiplication by sum_h coeff[h] h on C[Gamma]; commutes with the
// left action.  Blocks of these are exactly the equivariant maps.
template <class K> Matrix<K> right_multiplication(const FiniteGroup& g, const std::vector<K>& coeff);
template <class K>
Matrix<K> random_equivariant_map(std::mt19937_64& rng, const FiniteGroup& g, int rows_mult, int cols_mult,
                                 int bound = 2);

template <class K>
GammaModule<K> gamma_module_from_span(std::shared_ptr<const FiniteGroup> group, int multiplicity,
                                      const Matrix<K>& span, const NumericConfig& cfg);
template <class K>
GammaModule<K> gamma_module_full(std::shared_ptr<const FiniteGroup> group, int multiplicity);
// Validates idempotence and equivariance of the projection.
template <class K>
GammaModule<K> gamma_module_from_projection(std::shared_ptr<const FiniteGroup> group, int multiplicity,
                                            const Matrix<K>& projection, const NumericConfig& cfg);

// dim_Gamma = (ordinary dimension) / |Gamma|.
template <class K> Rational vn_dim(const GammaModule<K>& m);

// Bounded complex of Gamma-modules with ambient differential matrices.
template <class K> struct GammaComplex {
    int start_degree = 0;
    std::vector<GammaModule<K>> modules;
    std::vector<Matrix<K>> diffs; // diffs[i]: modules[i] -> modules[i+1]

    int length() const { return static_cast<int>(modules.size()); }
    int degree_of(int index) const { return start_degree + index; }
};

// Checks equivariance of every differential, d(S_i) in S_{i+1} and d^2 = 0.
template <class K> void validate_gamma_complex(const GammaComplex<K>& c, const NumericConfig& cfg);

// dim_Gamma of ker/im per degree (indexed like modules).
template <class K> std::vector<Rational> complex_cohomology_dims(const GammaComplex<K>& c, const NumericConfig& cfg);

template <class K> Rational gamma_euler_characteristic(const GammaComplex<K>& c);

// Degreewise maps of a chain map f : C0 -> C1 (same start_degree alignment
// handled by the caller; maps[i]: C0.modules[i] -> C1.modules[i]).
template <class K> struct GammaChainMap {
    std::vector<Matrix<K>> maps;
};
template <class K>
void validate_chain_map(const GammaComplex<K>& c0, const GammaComplex<K>& c1, const GammaChainMap<K>& f,
                        const NumericConfig& cfg);

// cone(f)^n = C0^{n+1} (+) C1^n with differential [[-d0, 0], [f, d1]].
template <class K>
GammaComplex<K> cone(const GammaComplex<K>& c0, const GammaComplex<K>& c1, const GammaChainMap<K>& f,
                     const NumericConfig& cfg);

// Desk-scale reading of U(Gamma)-torsion for abelian families: dimension
// jumps over measure-zero character sets carry no U(Gamma)-dimension.
struct TorsionReport {
    bool torsion_present = false;
    std::vector<CharacterSample> jump_locus;
    std::array<Rational, 3> von_neumann{Rational(0), Rational(0), Rational(0)};
};
TorsionReport torsion_report(const CharacterFamily& family);

} // namespace l2c
