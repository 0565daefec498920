#include "l2curve/instances.hpp"

#include <algorithm>

namespace l2c {

namespace {

using G = GaussianRational;
using Mat = Matrix<G>;

G unit_scalar(std::mt19937_64& rng) {
    switch (rng() % 4) {
        case 0: return G(1);
        case 1: return G(-1);
        case 2: return gauss_i();
        default: return -gauss_i();
    }
}

// Monomial matrix: permutation with entries in {1, -1, i, -i}.  These form a
// finite group, so any product or inverse stays quasi-unitary.
Mat random_monomial(std::mt19937_64& rng, int n) {
    std::vector<int> perm(n);
    for (int i = 0; i < n; ++i) perm[i] = i;
    for (int i = n - 1; i > 0; --i) std::swap(perm[i], perm[rng() % (i + 1)]);
    Mat m(n, n);
    for (int j = 0; j < n; ++j) m(perm[j], j) = unit_scalar(rng);
    return m;
}

Mat random_unitriangular(std::mt19937_64& rng, int n) {
    Mat m = Mat::identity(n);
    std::uniform_int_distribution<int> pick(-2, 2);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) m(i, j) = G(pick(rng));
    return m;
}

Mat random_diagonal_unit(std::mt19937_64& rng, int n) {
    Mat m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = unit_scalar(rng);
    return m;
}

Mat random_conjugator(std::mt19937_64& rng, int n) {
    std::uniform_int_distribution<int> pick(-1, 1);
    Mat m = Mat::identity(n);
    for (int t = 0; t < 2 * n; ++t) {
        int i = static_cast<int>(rng() % n), j = static_cast<int>(rng() % n);
        if (i == j) continue;
        G c(pick(rng));
        for (int k = 0; k < n; ++k) m(i, k) += c * m(j, k);
    }
    return m;
}

Mat commutator(const Mat& a, const Mat& b) { return a * b * inverse(a) * inverse(b); }

// One block of generator images on the fixed surface.  Kinds:
//   monomial      : every image in the signed-i monomial group
//   unitriangular : every image unipotent
//   diagonal      : every image diagonal with unit entries (abelian)
std::vector<Mat> random_block(std::mt19937_64& rng, const SurfaceData& surf, int n, int kind) {
    int g = surf.genus, s = surf.s();
    auto draw = [&](void) -> Mat {
        if (kind == 0) return random_monomial(rng, n);
        if (kind == 1) return random_unitriangular(rng, n);
        return random_diagonal_unit(rng, n);
    };
    std::vector<Mat> mats;
    for (int i = 0; i < 2 * g; ++i) mats.push_back(draw());
    if (kind == 0 && s == 0 && g >= 1) {
        // Monomial images rarely satisfy prod [a,b] = I by luck; mirror the
        // first handle into the second when possible, else go abelian.
        if (g >= 2) {
            mats[2] = mats[1];
            mats[3] = mats[0];
            for (int i = 4; i < 2 * g; ++i) mats[i] = Mat::identity(n);
        } else {
            for (auto& m : mats) m = random_diagonal_unit(rng, n);
        }
    }
    if (kind == 1 && s == 0 && g >= 1) {
        if (g >= 2) {
            mats[2] = mats[1];
            mats[3] = mats[0];
            for (int i = 4; i < 2 * g; ++i) mats[i] = Mat::identity(n);
        } else {
            mats[1] = Mat::identity(n);
        }
    }
    Mat acc = Mat::identity(n);
    for (int i = 0; i < g; ++i) acc = acc * commutator(mats[2 * i], mats[2 * i + 1]);
    if (s == 0) {
        if (!(acc - Mat::identity(n)).is_zero(0)) throw InternalError("instance generator: closed-surface relation");
        return mats;
    }
    for (int p = 0; p < s - 1; ++p) {
        Mat t = draw();
        mats.push_back(t);
        acc = acc * t;
    }
    mats.push_back(inverse(acc));
    return mats;
}

} // namespace

LocalSystem<GaussianRational> random_local_system_on(std::mt19937_64& rng, const SurfaceData& surf,
                                                     const InstanceOptions& opt) {
    int max_rank = std::max(1, opt.max_rank);
    int n = 1 + static_cast<int>(rng() % max_rank);
    // Split the rank into one or two blocks of independent kind.
    std::vector<int> block_sizes;
    if (n >= 2 && rng() % 3 == 0) {
        int first = 1 + static_cast<int>(rng() % (n - 1));
        block_sizes = {first, n - first};
    } else {
        block_sizes = {n};
    }
    std::vector<std::vector<Mat>> blocks;
    for (int sz : block_sizes) {
        int kind = opt.unipotent_meridians ? 1 : static_cast<int>(rng() % 3);
        blocks.push_back(random_block(rng, surf, sz, kind));
    }
    LocalSystem<GaussianRational> sys;
    sys.surface = surf;
    sys.n = n;
    int gens = surf.generator_count();
    Mat conj = random_conjugator(rng, n);
    Mat conj_inv = inverse(conj);
    for (int i = 0; i < gens; ++i) {
        Mat m(n, n);
        int off = 0;
        for (size_t b = 0; b < blocks.size(); ++b) {
            const Mat& blk = blocks[b][i];
            for (int r = 0; r < blk.rows(); ++r)
                for (int c = 0; c < blk.cols(); ++c) m(off + r, off + c) = blk(r, c);
            off += blk.rows();
        }
        sys.mats.push_back(conj * m * conj_inv);
    }
    return sys;
}

LocalSystem<GaussianRational> random_local_system(std::mt19937_64& rng, const InstanceOptions& opt) {
    for (int attempt = 0; attempt < 100; ++attempt) {
        SurfaceData surf;
        surf.genus = static_cast<int>(rng() % (opt.max_genus + 1));
        int s = static_cast<int>(rng() % (opt.max_punctures + 1));
        if (2 * surf.genus + s < opt.min_generators) continue;
        for (int p = 0; p < s; ++p) surf.punctures.push_back("p" + std::to_string(p + 1));
        return random_local_system_on(rng, surf, opt);
    }
    throw InternalError("instance generator: no admissible surface");
}

CoveringDatum random_cover(std::mt19937_64& rng, const SurfaceData& surf, int rank_n, const InstanceOptions& opt) {
    // Small group library, reshuffled per draw.
    std::vector<std::shared_ptr<const FiniteGroup>> groups;
    auto add = [&](FiniteGroup g) {
        if (g.order() <= opt.max_group_order && static_cast<long>(g.order()) * rank_n <= opt.max_induced_dim)
            groups.push_back(std::make_shared<FiniteGroup>(std::move(g)));
    };
    add(FiniteGroup::cyclic(2));
    add(FiniteGroup::cyclic(3));
    add(FiniteGroup::cyclic(4));
    add(FiniteGroup::cyclic(6));
    add(FiniteGroup::direct_product(FiniteGroup::cyclic(2), FiniteGroup::cyclic(2)));
    add(FiniteGroup::symmetric(3));
    add(FiniteGroup::dihedral(4));
    add(FiniteGroup::quaternion8());
    add(FiniteGroup::cyclic(12));
    add(FiniteGroup::symmetric(4));
    if (groups.empty()) groups.push_back(std::make_shared<FiniteGroup>(FiniteGroup::cyclic(1)));

    int g = surf.genus, s = surf.s();
    for (int attempt = 0; attempt < 400; ++attempt) {
        const auto& group = groups[rng() % groups.size()];
        const FiniteGroup& G = *group;
        CoveringDatum c;
        c.base = surf;
        c.group = group;
        c.images.assign(surf.generator_count(), G.identity());
        for (int i = 0; i < 2 * g; ++i) c.images[i] = static_cast<GroupElement>(rng() % G.order());
        GroupElement acc = G.identity();
        for (int i = 0; i < g; ++i) {
            GroupElement a = c.images[2 * i], b = c.images[2 * i + 1];
            acc = G.mul(acc, G.mul(G.mul(a, b), G.mul(G.inv(a), G.inv(b))));
        }
        if (s == 0) {
            if (acc != G.identity()) continue;
        } else {
            for (int p = 0; p < s - 1; ++p) {
                GroupElement x = static_cast<GroupElement>(rng() % G.order());
                c.images[2 * g + p] = x;
                acc = G.mul(acc, x);
            }
            c.images[2 * g + s - 1] = G.inv(acc);
        }
        if (!G.is_generating(c.images)) continue;
        return c;
    }
    return CoveringDatum::trivial(surf);
}

} // namespace l2c
