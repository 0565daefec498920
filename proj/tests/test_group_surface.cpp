#include "doctest.h"

#include "l2curve/group.hpp"
#include "l2curve/surface.hpp"

using namespace l2c;

TEST_CASE("element orders in S3") {
    FiniteGroup s3 = FiniteGroup::symmetric(3);
    REQUIRE(s3.order() == 6);
    CHECK(s3.element_order(s3.identity()) == 1);
    int seen2 = 0, seen3 = 0;
    for (GroupElement g = 0; g < s3.order(); ++g) {
        int o = s3.element_order(g);
        CHECK(6 % o == 0); // Lagrange
        if (o == 2) ++seen2;
        if (o == 3) ++seen3;
    }
    CHECK(seen2 == 3);
    CHECK(seen3 == 2);
}

TEST_CASE("cosets") {
    FiniteGroup z4 = FiniteGroup::cyclic(4);
    auto parts = z4.cosets(2); // <2> = {0,2}
    CHECK(parts.size() == 2);

    FiniteGroup s3 = FiniteGroup::symmetric(3);
    GroupElement transposition = -1;
    for (GroupElement g = 0; g < s3.order(); ++g)
        if (s3.element_order(g) == 2) transposition = g;
    auto s3_parts = s3.cosets(transposition);
    CHECK(s3_parts.size() == 3);

    auto singletons = s3.cosets(s3.identity());
    CHECK(singletons.size() == 6);

    // Sizes sum to |G|.
    size_t total = 0;
    for (const auto& part : s3_parts) total += part.size();
    CHECK(total == 6);
}

TEST_CASE("regular representation") {
    FiniteGroup z2 = FiniteGroup::cyclic(2);
    auto m = z2.regular_rep<GaussianRational>(1);
    CHECK(m(0, 1) == GaussianRational(1));
    CHECK(m(1, 0) == GaussianRational(1));
    CHECK(m(0, 0) == GaussianRational(0));

    // Faithful homomorphism on all pairs; trace |G| iff identity.
    for (const FiniteGroup& g : {FiniteGroup::symmetric(3), FiniteGroup::dihedral(4), FiniteGroup::quaternion8()}) {
        CHECK(g.regular_rep<GaussianRational>(g.identity()) == Matrix<GaussianRational>::identity(g.order()));
        for (GroupElement a = 0; a < g.order(); ++a) {
            auto ra = g.regular_rep<GaussianRational>(a);
            GaussianRational tr{};
            for (int i = 0; i < g.order(); ++i) tr += ra(i, i);
            CHECK(tr == GaussianRational(a == g.identity() ? g.order() : 0));
            for (GroupElement b = 0; b < g.order(); ++b)
                CHECK(g.regular_rep<GaussianRational>(g.mul(a, b)) == ra * g.regular_rep<GaussianRational>(b));
        }
    }
}

TEST_CASE("is_generating") {
    FiniteGroup s3 = FiniteGroup::symmetric(3);
    GroupElement t = -1, c = -1;
    for (GroupElement g = 0; g < s3.order(); ++g) {
        if (s3.element_order(g) == 2) t = g;
        if (s3.element_order(g) == 3) c = g;
    }
    CHECK(s3.is_generating({t, c}));
    CHECK(!s3.is_generating({c}));
    FiniteGroup z4 = FiniteGroup::cyclic(4);
    CHECK(!z4.is_generating({2}));
    std::vector<GroupElement> all;
    for (GroupElement g = 0; g < z4.order(); ++g) all.push_back(g);
    CHECK(z4.is_generating(all));
}

TEST_CASE("bad group tables are rejected") {
    CHECK_THROWS_AS(FiniteGroup::from_table({{0, 0}, {0, 0}}), InputError);
    CHECK_THROWS_AS(FiniteGroup::from_table({{1, 0}, {1, 0}}), InputError);
}

TEST_CASE("validate_covering on the branched double cover of the sphere") {
    SurfaceData surf;
    surf.genus = 0;
    surf.punctures = {"p1", "p2", "p3"};
    CoveringDatum c;
    c.base = surf;
    c.group = std::make_shared<FiniteGroup>(FiniteGroup::cyclic(2));
    c.images = {1, 1, 0};
    auto inv = validate_covering(c);
    CHECK(inv.n_p == std::vector<int>{2, 2, 1});
    CHECK(*inv.punctures_upstairs == 4);
    CHECK(*inv.euler_upstairs == 2);
    CHECK(*inv.genus_upstairs == 0);

    // Classical Riemann-Hurwitz rearrangement: chi(X~) = |G| chi(X) - sum (|G| - |G|/n_p).
    long rearranged = 2 * 2;
    for (int np : inv.n_p) rearranged -= 2 - 2 / np;
    CHECK(*inv.euler_upstairs == rearranged);
}

TEST_CASE("validate_covering rejects bad input") {
    SurfaceData surf;
    surf.genus = 0;
    surf.punctures = {"p1", "p2", "p3"};
    CoveringDatum c;
    c.base = surf;
    c.group = std::make_shared<FiniteGroup>(FiniteGroup::cyclic(2));
    c.images = {1, 1, 1}; // product nonzero: relation violated
    CHECK_THROWS_AS(validate_covering(c), InputError);
    c.images = {0, 0, 0}; // does not generate Z/2
    CHECK_THROWS_AS(validate_covering(c), InputError);
}

TEST_CASE("trivial covering") {
    SurfaceData surf;
    surf.genus = 1;
    surf.punctures = {"p1"};
    auto c = CoveringDatum::trivial(surf);
    auto inv = validate_covering(c);
    CHECK(inv.n_p == std::vector<int>{1});
    CHECK(*inv.euler_upstairs == surf.euler_compact());
}

TEST_CASE("abelian covering of the torus") {
    SurfaceData surf;
    surf.genus = 1;
    CoveringDatum c;
    c.base = surf;
    c.abelian = AbelianRank{1};
    c.abelian_images = {{1}, {0}};
    auto inv = validate_covering(c);
    CHECK(inv.n_p.empty());
    CHECK(!inv.euler_upstairs.has_value());

    c.abelian_images = {{2}, {0}}; // index 2 sublattice: not surjective
    CHECK_THROWS_AS(validate_covering(c), InputError);

    c.abelian = AbelianRank{2};
    c.abelian_images = {{1, 0}, {0, 1}};
    CHECK_NOTHROW(validate_covering(c));
}

TEST_CASE("puncture permutation permutes n_p") {
    SurfaceData surf;
    surf.genus = 0;
    surf.punctures = {"p1", "p2", "p3", "p4"};
    CoveringDatum c;
    c.base = surf;
    c.group = std::make_shared<FiniteGroup>(FiniteGroup::cyclic(4));
    c.images = {1, 2, 3, 2};
    auto inv = validate_covering(c);
    CoveringDatum permuted = c;
    std::swap(permuted.images[0], permuted.images[2]);
    auto inv2 = validate_covering(permuted);
    CHECK(inv.n_p[0] == inv2.n_p[2]);
    CHECK(inv.n_p[2] == inv2.n_p[0]);
    CHECK(*inv.euler_upstairs == *inv2.euler_upstairs);
}
