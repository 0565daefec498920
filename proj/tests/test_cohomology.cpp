#include "doctest.h"

#include "l2curve/cohomology.hpp"
#include "l2curve/instances.hpp"
#include "test_util.hpp"

using namespace l2c;
using namespace l2c::testutil;

namespace {

NumericConfig cfg;

SurfaceData sphere3() {
    SurfaceData s;
    s.genus = 0;
    s.punctures = {"p1", "p2", "p3"};
    return s;
}

LocalSystem<GaussianRational> rank1_system(const SurfaceData& surf, const std::vector<int>& meridians) {
    LocalSystem<GaussianRational> sys;
    sys.surface = surf;
    sys.n = 1;
    for (int i = 0; i < 2 * surf.genus; ++i) sys.mats.push_back(Matrix<GaussianRational>::identity(1));
    for (int v : meridians) sys.mats.push_back(mat_int({{v}}));
    return sys;
}

// The worked g=1, s=1 rank-2 system: A = [[1,1],[0,1]], B = [[2,0],[0,1]],
// T = [A,B]^{-1}.
LocalSystem<GaussianRational> worked_rank2() {
    SurfaceData surf;
    surf.genus = 1;
    surf.punctures = {"p1"};
    LocalSystem<GaussianRational> sys;
    sys.surface = surf;
    sys.n = 2;
    auto a = mat_int({{1, 1}, {0, 1}});
    auto b = mat_int({{2, 0}, {0, 1}});
    auto comm = a * b * inverse(a) * inverse(b);
    sys.mats = {a, b, inverse(comm)};
    return sys;
}

CoveringDatum z2_sphere_cover(const SurfaceData& surf) {
    CoveringDatum c;
    c.base = surf;
    c.group = std::make_shared<FiniteGroup>(FiniteGroup::cyclic(2));
    c.images = {1, 1, 0};
    return c;
}

} // namespace

TEST_CASE("stalk_dim") {
    CHECK(stalk_dim(Matrix<GaussianRational>::identity(3), cfg) == 3);
    CHECK(stalk_dim(mat_int({{1, 1}, {0, 1}}), cfg) == 1);
    CHECK(stalk_dim(mat_int({{-1}}), cfg) == 0);
}

TEST_CASE("global_h: trivial rank-1 system") {
    for (int g : {0, 1, 2}) {
        for (int s : {1, 2, 3}) {
            SurfaceData surf;
            surf.genus = g;
            for (int p = 0; p < s; ++p) surf.punctures.push_back("p" + std::to_string(p));
            auto sys = LocalSystem<GaussianRational>::trivial(surf);
            auto r = global_h(sys, cfg);
            CHECK(r.h0 == 1);
            CHECK(r.h1 == 2 * g);
            CHECK(r.h2 == 1);
            CHECK(r.chi == 2 - 2 * g);
        }
    }
}

TEST_CASE("global_h: worked g=1 s=1 rank-2 example") {
    auto sys = worked_rank2();
    CHECK(sys.meridian(0) == mat_int({{1, 1}, {0, 1}}));
    auto r = global_h(sys, cfg);
    CHECK(r.h0 == 0);
    CHECK(r.h1 == 2);
    CHECK(r.h2 == 1);
    CHECK(r.chi == -1);
    CHECK(parabolic_h1(sys, cfg) == 2);
}

TEST_CASE("global_h: rank-1 with meridians (-1,-1,1)") {
    auto sys = rank1_system(sphere3(), {-1, -1, 1});
    auto r = global_h(sys, cfg);
    CHECK(r.h0 == 0);
    CHECK(r.h1 == 0);
    CHECK(r.h2 == 0);
    CHECK(r.chi == 0);
    CHECK(parabolic_h1(sys, cfg) == 0);
}

TEST_CASE("parabolic_h1: trivial rank-1 torus with one puncture") {
    SurfaceData surf;
    surf.genus = 1;
    surf.punctures = {"p1"};
    auto sys = LocalSystem<GaussianRational>::trivial(surf);
    CHECK(parabolic_h1(sys, cfg) == 2);
}

TEST_CASE("validation rejects bad systems") {
    auto sys = rank1_system(sphere3(), {-1, -1, -1});
    CHECK_THROWS_AS(global_h(sys, cfg), InputError); // relation violated
    auto sys2 = rank1_system(sphere3(), {2, 1, 1});
    sys2.mats[2] = mat_exact({{"1/2"}});
    CHECK_THROWS_AS(global_h(sys2, cfg), NotQuasiUnitary);
}

TEST_CASE("induced_cover_system: regular representation tensor") {
    auto surf = sphere3();
    auto c = z2_sphere_cover(surf);

    SUBCASE("trivial local system induces the swap system") {
        auto sys = LocalSystem<GaussianRational>::trivial(surf);
        auto big = induced_cover_system(sys, c, cfg);
        CHECK(big.n == 2);
        CHECK(big.meridian(0) == mat_int({{0, 1}, {1, 0}}));
        CHECK(big.meridian(1) == mat_int({{0, 1}, {1, 0}}));
        CHECK(big.meridian(2) == Matrix<GaussianRational>::identity(2));
    }
    SUBCASE("rank-1 (-1,-1,1) induces minus swap") {
        auto sys = rank1_system(surf, {-1, -1, 1});
        auto big = induced_cover_system(sys, c, cfg);
        CHECK(big.meridian(0) == mat_int({{0, -1}, {-1, 0}}));
        CHECK(big.meridian(2) == Matrix<GaussianRational>::identity(2));
    }
    SUBCASE("trivial covering induces the system itself") {
        auto sys = rank1_system(surf, {-1, -1, 1});
        auto big = induced_cover_system(sys, CoveringDatum::trivial(surf), cfg);
        CHECK(big.mats == sys.mats);
    }
}

TEST_CASE("l2_cohomology_finite: worked sphere covers") {
    auto surf = sphere3();
    auto c = z2_sphere_cover(surf);

    SUBCASE("trivial rank-1: both models give chi = 1 and agree") {
        auto sys = LocalSystem<GaussianRational>::trivial(surf);
        auto a = analyze_cover(sys, c, cfg);
        CHECK(a.extension_of_pullback.chi == 1);
        CHECK(a.pullback_of_extension.chi == 1);
        CHECK(!a.divergent);
        CHECK(a.extension_of_pullback.h0 == a.pullback_of_extension.h0);
        CHECK(a.extension_of_pullback.h1 == a.pullback_of_extension.h1);
        CHECK(a.extension_of_pullback.h2 == a.pullback_of_extension.h2);
        CHECK(a.extension_of_pullback.h0 == Rational(1, 2));
    }
    SUBCASE("rank-1 (-1,-1,1): models diverge with chi 1 vs 0") {
        auto sys = rank1_system(surf, {-1, -1, 1});
        auto a = analyze_cover(sys, c, cfg);
        CHECK(a.extension_of_pullback.chi == 1);
        CHECK(a.pullback_of_extension.chi == 0);
        CHECK(a.divergent);
        CHECK(a.big_stalks == std::vector<int>{1, 1, 2});
        CHECK(a.q_dims == std::vector<int>{1, 1, 0});
        // Six-term bookkeeping: h2 equal, h0 small <= h0 big.
        CHECK(a.pullback_of_extension.h2 == a.extension_of_pullback.h2);
        CHECK(a.pullback_of_extension.h0 <= a.extension_of_pullback.h0);
        CHECK(a.pullback_of_extension.h0 == 0);
        CHECK(a.pullback_of_extension.h1 == Rational(1, 2));
    }
}

TEST_CASE("trivial-cover collapse on random instances") {
    std::mt19937_64 rng(101);
    InstanceOptions opt;
    opt.max_rank = 3;
    for (int t = 0; t < 25; ++t) {
        auto sys = random_local_system(rng, opt);
        auto base = global_h(sys, cfg);
        auto a = analyze_cover(sys, CoveringDatum::trivial(sys.surface), cfg);
        for (const CohomologyReport* r : {&a.extension_of_pullback, &a.pullback_of_extension}) {
            CHECK(r->h0 == base.h0);
            CHECK(r->h1 == base.h1);
            CHECK(r->h2 == base.h2);
        }
    }
}

TEST_CASE("oracle agreement: parabolic h1 equals global h1 on random instances") {
    std::mt19937_64 rng(202);
    InstanceOptions opt;
    for (int t = 0; t < 30; ++t) {
        auto sys = random_local_system(rng, opt);
        auto r = global_h(sys, cfg);
        CHECK(Rational(parabolic_h1(sys, cfg)) == r.h1);
        // Same instance through the float backend.
        auto fsys = cast_system<Complex>(sys);
        auto fr = global_h(fsys, cfg);
        CHECK(fr.h0 == r.h0);
        CHECK(fr.h1 == r.h1);
        CHECK(fr.h2 == r.h2);
    }
}

TEST_CASE("riemann_hurwitz_check: worked example and identity") {
    auto surf = sphere3();
    auto c = z2_sphere_cover(surf);
    auto sys = LocalSystem<GaussianRational>::trivial(surf);
    auto rec = riemann_hurwitz_check(sys, c, cfg);
    CHECK(rec.lhs == -1);
    CHECK(rec.rhs == -1);
    CHECK(rec.equal);

    SUBCASE("trivial covering is trivially equal") {
        auto rec2 = riemann_hurwitz_check(sys, CoveringDatum::trivial(surf), cfg);
        CHECK(rec2.equal);
    }
    SUBCASE("random instances") {
        std::mt19937_64 rng(303);
        InstanceOptions opt;
        opt.max_rank = 3;
        opt.max_group_order = 12;
        opt.max_induced_dim = 36;
        for (int t = 0; t < 20; ++t) {
            auto rsys = random_local_system(rng, opt);
            auto rcov = random_cover(rng, rsys.surface, rsys.n, opt);
            auto rrec = riemann_hurwitz_check(rsys, rcov, cfg);
            CHECK(rrec.equal);
        }
    }
}

TEST_CASE("model agreement for unipotent meridians") {
    std::mt19937_64 rng(404);
    InstanceOptions opt;
    opt.unipotent_meridians = true;
    opt.max_rank = 3;
    opt.max_group_order = 8;
    opt.max_induced_dim = 24;
    opt.min_generators = 1;
    for (int t = 0; t < 15; ++t) {
        auto sys = random_local_system(rng, opt);
        auto cov = random_cover(rng, sys.surface, sys.n, opt);
        auto a = analyze_cover(sys, cov, cfg);
        CHECK(!a.divergent);
        CHECK(a.extension_of_pullback.h0 == a.pullback_of_extension.h0);
        CHECK(a.extension_of_pullback.h1 == a.pullback_of_extension.h1);
        CHECK(a.extension_of_pullback.h2 == a.pullback_of_extension.h2);
    }
}

TEST_CASE("chi additivity of the induced system") {
    std::mt19937_64 rng(505);
    InstanceOptions opt;
    opt.max_rank = 2;
    opt.max_group_order = 8;
    opt.max_induced_dim = 16;
    for (int t = 0; t < 10; ++t) {
        auto sys = random_local_system(rng, opt);
        auto cov = random_cover(rng, sys.surface, sys.n, opt);
        auto big = induced_cover_system(sys, cov, cfg);
        auto r = global_h(big, cfg);
        long order = cov.group->order();
        long expected = sys.surface.euler_open() * sys.n * order;
        for (int p = 0; p < sys.surface.s(); ++p) expected += stalk_dim(big.meridian(p), cfg);
        CHECK(r.chi == expected);
        auto a = analyze_cover(sys, cov, cfg);
        CHECK(a.extension_of_pullback.chi == Rational(expected) / Rational(order));
    }
}

TEST_CASE("character_family: trivial rank-1 on the torus over Z") {
    SurfaceData surf;
    surf.genus = 1;
    CoveringDatum c;
    c.base = surf;
    c.abelian = AbelianRank{1};
    c.abelian_images = {{1}, {0}};
    auto sys = LocalSystem<GaussianRational>::trivial(surf);
    auto fam = character_family(sys, c, 24, 42, cfg);
    CHECK(fam.generic == std::array<long, 3>{0, 0, 0});
    REQUIRE(!fam.samples.empty());
    CHECK(fam.samples[0].dims == std::array<long, 3>{1, 2, 1});
    CHECK(fam.samples[0].jump);
    for (size_t i = 1; i < fam.samples.size(); ++i) CHECK(!fam.samples[i].jump);
    CHECK(fam.von_neumann == std::array<Rational, 3>{Rational(0), Rational(0), Rational(0)});
}

TEST_CASE("character_family: generically twisted system has no jumps among samples") {
    SurfaceData surf;
    surf.genus = 1;
    CoveringDatum c;
    c.base = surf;
    c.abelian = AbelianRank{1};
    c.abelian_images = {{1}, {0}};
    LocalSystem<Complex> sys;
    sys.surface = surf;
    sys.n = 1;
    sys.mats = {mat_cplx({{std::polar(1.0, 0.7234581)}}), mat_cplx({{{1.0, 0.0}}})};
    auto fam = character_family(sys, c, 24, 43, cfg);
    CHECK(fam.generic == std::array<long, 3>{0, 0, 0});
    for (const auto& sample : fam.samples) CHECK(!sample.jump);
}

TEST_CASE("character_family: rank-2 lattice over a genus-2 surface") {
    SurfaceData surf;
    surf.genus = 2;
    CoveringDatum c;
    c.base = surf;
    c.abelian = AbelianRank{2};
    c.abelian_images = {{1, 0}, {0, 0}, {0, 1}, {0, 0}};
    auto sys = LocalSystem<GaussianRational>::trivial(surf);
    auto fam = character_family(sys, c, 20, 99, cfg);
    // Twisting kills h0 and h2 generically but chi = -2 persists.
    CHECK(fam.generic == std::array<long, 3>{0, 2, 0});
    REQUIRE(!fam.samples.empty());
    CHECK(fam.samples[0].dims == std::array<long, 3>{1, 4, 1});
    CHECK(fam.samples[0].jump);
    // Semicontinuity: generic <= every sample, coordinatewise.
    for (const auto& sample : fam.samples)
        for (int k = 0; k < 3; ++k) CHECK(fam.generic[k] <= sample.dims[k]);
}

TEST_CASE("global_h on the unpunctured sphere") {
    SurfaceData surf; // g = 0, s = 0: no generators at all
    auto sys = LocalSystem<GaussianRational>::trivial(surf, 3);
    auto r = global_h(sys, cfg);
    CHECK(r.h0 == 3);
    CHECK(r.h1 == 0);
    CHECK(r.h2 == 3);
    CHECK(r.chi == 6);
    CHECK(parabolic_h1(sys, cfg) == 0);
}

TEST_CASE("character_family: degenerate trivial group equals global_h") {
    auto surf = sphere3();
    auto sys = rank1_system(surf, {-1, -1, 1});
    auto fam = character_family(sys, CoveringDatum::trivial(surf), 8, 44, cfg);
    auto base = global_h(sys, cfg);
    CHECK(Rational(fam.generic[0]) == base.h0);
    CHECK(Rational(fam.generic[1]) == base.h1);
    CHECK(Rational(fam.generic[2]) == base.h2);
}

TEST_CASE("character_family rejects nontrivial meridian images") {
    auto surf = sphere3();
    CoveringDatum c;
    c.base = surf;
    c.abelian = AbelianRank{1};
    c.abelian_images = {{1}, {-1}, {0}};
    auto sys = LocalSystem<GaussianRational>::trivial(surf);
    CHECK_THROWS_AS(character_family(sys, c, 4, 45, cfg), InputError);
}

TEST_CASE("skyscraper_summand") {
    auto c = CoveringDatum::trivial(sphere3());
    SkyscraperDatum empty;
    auto r0 = skyscraper_summand(empty, c);
    CHECK(r0.h0 == 0);
    CHECK(r0.h1 == 0);
    CHECK(r0.h2 == 0);

    SkyscraperDatum one;
    one.points = {{"p1", 3, {}}};
    auto r1 = skyscraper_summand(one, c);
    CHECK(r1.h0 == 3);
    CHECK(r1.h1 == 0);
    CHECK(r1.h2 == 0);

    SkyscraperDatum two;
    two.points = {{"p1", 1, {}}, {"p2", 2, {{1, 1}, {0, 0}}}};
    auto r2 = skyscraper_summand(two, c);
    CHECK(r2.h0 == 3);
    CHECK(r2.chi == 3);
}
