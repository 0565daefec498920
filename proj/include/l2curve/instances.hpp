#pragma once

#include "l2curve/cohomology.hpp"

#include <random>

namespace l2c {

// Seeded generators for valid random inputs: local systems whose meridians
// are quasi-unitary and satisfy the surface relation, and coverings whose
// images satisfy the relation and generate.
struct InstanceOptions {
    int max_genus = 2;
    int max_punctures = 4;
    int max_rank = 4;
    int min_generators = 1;          // require 2g + s >= this
    bool unipotent_meridians = false;
    int max_group_order = 24;
    long max_induced_dim = 120;      // cap on n * |Gamma|
};

LocalSystem<GaussianRational> random_local_system(std::mt19937_64& rng, const InstanceOptions& opt);
LocalSystem<GaussianRational> random_local_system_on(std::mt19937_64& rng, const SurfaceData& surf,
                                                     const InstanceOptions& opt);

// A covering of the system's base surface by a random small group, honoring
// opt.max_group_order and opt.max_induced_dim (given the system rank).
CoveringDatum random_cover(std::mt19937_64& rng, const SurfaceData& surf, int rank_n,
                           const InstanceOptions& opt);

template <class K> LocalSystem<K> cast_system(const LocalSystem<GaussianRational>& sys) {
    if constexpr (std::is_same_v<K, GaussianRational>) {
        return sys;
    } else {
        LocalSystem<Complex> out;
        out.surface = sys.surface;
        out.n = sys.n;
        for (const auto& m : sys.mats) out.mats.push_back(to_complex_matrix(m));
        return out;
    }
}

} // namespace l2c
