#include "l2curve/surface.hpp"

namespace l2c {

CoveringDatum CoveringDatum::trivial(SurfaceData base) {
    CoveringDatum c;
    c.base = std::move(base);
    c.group = std::make_shared<FiniteGroup>(FiniteGroup::cyclic(1));
    c.images.assign(c.base.generator_count(), 0);
    return c;
}

CoverInvariants validate_covering(const CoveringDatum& c) {
    const SurfaceData& surf = c.base;
    int g = surf.genus, s = surf.s();
    CoverInvariants inv;

    if (c.is_finite()) {
        const FiniteGroup& G = *c.group;
        if (static_cast<int>(c.images.size()) != surf.generator_count())
            throw InputError("cover images count does not match generator count");
        for (GroupElement x : c.images)
            if (x < 0 || x >= G.order()) throw InputError("cover image out of range");

        // prod [a_i, b_i] * prod c_p = identity.
        GroupElement acc = G.identity();
        for (int i = 0; i < g; ++i) {
            GroupElement a = c.images[2 * i], b = c.images[2 * i + 1];
            GroupElement comm = G.mul(G.mul(a, b), G.mul(G.inv(a), G.inv(b)));
            acc = G.mul(acc, comm);
        }
        for (int p = 0; p < s; ++p) acc = G.mul(acc, c.images[2 * g + p]);
        if (acc != G.identity()) throw InputError("cover relation violated: images do not satisfy the surface relation");

        if (!G.is_generating(c.images)) throw InputError("cover images do not generate the group (disconnected cover)");

        long order = G.order();
        long s_up = 0;
        for (int p = 0; p < s; ++p) {
            int np = G.element_order(c.images[2 * g + p]);
            inv.n_p.push_back(np);
            s_up += order / np;
        }
        long chi_up = order * (2 - 2 * static_cast<long>(g) - s) + s_up;
        inv.punctures_upstairs = s_up;
        inv.euler_upstairs = chi_up;
        if ((2 - chi_up) % 2 != 0) throw InternalError("upstairs Euler characteristic has wrong parity");
        long genus_up = (2 - chi_up) / 2;
        if (genus_up < 0) throw InternalError("negative genus upstairs");
        inv.genus_upstairs = genus_up;
        return inv;
    }

    if (!c.abelian) throw InputError("covering datum has neither finite group nor abelian rank");
    int d = c.abelian->d;
    if (static_cast<int>(c.abelian_images.size()) != surf.generator_count())
        throw InputError("cover images count does not match generator count");
    // Torsion-free target: every meridian image must be trivial (n_p = 1).
    for (int p = 0; p < s; ++p) {
        for (long v : c.abelian_images[2 * g + p])
            if (v != 0) throw InputError("abelian cover with nontrivial meridian image (torsion-free groups force n_p = 1)");
    }
    // Commutators vanish and meridians are trivial, so the relation holds;
    // only generation needs checking.
    if (!generates_lattice(d, c.abelian_images))
        throw InputError("abelian cover images do not generate Z^d (disconnected cover)");
    inv.n_p.assign(s, 1);
    return inv;
}

} // namespace l2c
