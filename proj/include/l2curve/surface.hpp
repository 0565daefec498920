#pragma once

#include "l2curve/group.hpp"

#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace l2c {

// Punctured surface M = X \ {p_1..p_s}.  Fundamental group convention used
// everywhere: generators a_1, b_1, ..., a_g, b_g, c_1, ..., c_s with the
// single relation prod [a_i, b_i] * prod c_p = 1; c_p is the meridian of
// puncture p.
struct SurfaceData {
    int genus = 0;
    std::vector<std::string> punctures;

    int s() const { return static_cast<int>(punctures.size()); }
    int euler_open() const { return 2 - 2 * genus - s(); }
    int euler_compact() const { return 2 - 2 * genus; }
    int generator_count() const { return 2 * genus + s(); }
};

// Homomorphism phi from the surface group to a finite group (or Z^d),
// inducing the covering pi: M~ -> M.
struct CoveringDatum {
    SurfaceData base;
    std::shared_ptr<const FiniteGroup> group;        // null for abelian covers
    std::optional<AbelianRank> abelian;              // set for Z^d covers
    std::vector<GroupElement> images;                // finite case, per generator
    std::vector<AbelianElement> abelian_images;      // abelian case, per generator

    bool is_finite() const { return group != nullptr; }
    bool is_trivial() const { return is_finite() && group->order() == 1; }

    static CoveringDatum trivial(SurfaceData base);
};

struct CoverInvariants {
    std::vector<int> n_p;                 // order of phi(c_p) per puncture
    // Finite covers only:
    std::optional<long> punctures_upstairs;   // s~ = sum |Gamma| / n_p
    std::optional<long> euler_upstairs;       // chi(X~)
    std::optional<long> genus_upstairs;       // g~
};

// Checks the relation, generation and branch numerology; throws InputError on
// invalid input and InternalError if the computed genus is not a non-negative
// integer.
CoverInvariants validate_covering(const CoveringDatum& c);

} // namespace l2c
