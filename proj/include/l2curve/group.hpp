#pragma once

#include "l2curve/errors.hpp"
#include "l2curve/matrix.hpp"

#include <string>
#include <vector>

namespace l2c {

using GroupElement = int;

// Finite group as an explicit multiplication table (0-based element indices).
// Construction validates that rows and columns are permutations and checks
// associativity (all triples up to order 64, random samples above).
class FiniteGroup {
  public:
    static FiniteGroup from_table(std::vector<std::vector<int>> table);
    // Permutations in one-line notation acting on {0..degree-1}; the group is
    // the closure of the generators, elements indexed in discovery order with
    // the identity first.
    static FiniteGroup from_permutations(int degree, const std::vector<std::vector<int>>& generators);

    static FiniteGroup cyclic(int n);
    static FiniteGroup symmetric(int n);   // n <= 4
    static FiniteGroup dihedral(int n);    // order 2n
    static FiniteGroup quaternion8();
    static FiniteGroup direct_product(const FiniteGroup& a, const FiniteGroup& b);

    int order() const { return order_; }
    GroupElement identity() const { return identity_; }
    GroupElement mul(GroupElement a, GroupElement b) const { return table_[a][b]; }
    GroupElement inv(GroupElement a) const { return inverse_[a]; }
    const std::vector<std::vector<int>>& table() const { return table_; }

    int element_order(GroupElement g) const;
    std::vector<GroupElement> cyclic_subgroup(GroupElement g) const;
    // Left cosets x<g>; a partition of the element set.
    std::vector<std::vector<GroupElement>> cosets(GroupElement generator) const;
    bool is_generating(const std::vector<GroupElement>& elements) const;

    // Left-translation permutation of g: gamma -> g * gamma.
    std::vector<int> left_translation(GroupElement g) const;
    template <class K> Matrix<K> regular_rep(GroupElement g) const {
        std::vector<int> p = left_translation(g);
        Matrix<K> m(order_, order_);
        for (int col = 0; col < order_; ++col) m(p[col], col) = FieldTraits<K>::one();
        return m;
    }

  private:
    FiniteGroup() = default;
    void finish_construction();
    int order_ = 0;
    GroupElement identity_ = 0;
    std::vector<std::vector<int>> table_;
    std::vector<int> inverse_;
};

// The group Z^d of an abelian character family; elements are integer vectors.
struct AbelianRank {
    int d = 0;
};
using AbelianElement = std::vector<long>;

// True when the integer vectors generate Z^d (all elementary divisors 1).
bool generates_lattice(int d, const std::vector<AbelianElement>& images);

} // namespace l2c
