#include "doctest.h"

#include "l2curve/weights.hpp"
#include "test_util.hpp"

#include <random>

using namespace l2c;
using namespace l2c::testutil;

namespace {
NumericConfig cfg;

LocalType lt(int n, std::vector<std::pair<Rational, std::vector<int>>> parts) {
    std::vector<LocalPart> ps;
    for (auto& [a, blocks] : parts) ps.push_back({RotationNumber(a), blocks});
    return make_local_type(n, std::move(ps));
}
} // namespace

TEST_CASE("local_type on the stated cases") {
    SUBCASE("identity") {
        auto t = local_type(Matrix<GaussianRational>::identity(2), cfg);
        REQUIRE(t.parts.size() == 1);
        CHECK(t.parts[0].alpha.value == 0);
        CHECK(t.parts[0].blocks == std::vector<int>{1, 1});
    }
    SUBCASE("single Jordan block") {
        auto t = local_type(mat_int({{1, 1}, {0, 1}}), cfg);
        REQUIRE(t.parts.size() == 1);
        CHECK(t.parts[0].blocks == std::vector<int>{2});
    }
    SUBCASE("diag(-1,-1,1)") {
        auto t = local_type(mat_int({{-1, 0, 0}, {0, -1, 0}, {0, 0, 1}}), cfg);
        REQUIRE(t.parts.size() == 2);
        CHECK(t.parts[0].alpha.value == Rational(-1, 2));
        CHECK(t.parts[0].blocks == std::vector<int>{1, 1});
        CHECK(t.parts[1].alpha.value == 0);
        CHECK(t.parts[1].blocks == std::vector<int>{1});
    }
    SUBCASE("order-3 semisimple with a 2-block on each conjugate eigenvalue") {
        // [[C, I], [0, C]] with C the companion of x^2+x+1.
        auto m = mat_int({{0, -1, 1, 0}, {1, -1, 0, 1}, {0, 0, 0, -1}, {0, 0, 1, -1}});
        auto t = local_type(m, cfg);
        REQUIRE(t.parts.size() == 2);
        CHECK(t.parts[0].alpha.value == Rational(-2, 3));
        CHECK(t.parts[0].blocks == std::vector<int>{2});
        CHECK(t.parts[1].alpha.value == Rational(-1, 3));
        CHECK(t.parts[1].blocks == std::vector<int>{2});
    }
    SUBCASE("order-8 eigenvalues split into the two Q(i) orbits") {
        // Companion matrices of x^2 - i and x^2 + i: eigenvalues zeta_8^{1,5}
        // and zeta_8^{3,7}.
        auto m = mat_exact({{"0", "i", "0", "0"},
                            {"1", "0", "0", "0"},
                            {"0", "0", "0", "-i"},
                            {"0", "0", "1", "0"}});
        auto t = local_type(m, cfg);
        REQUIRE(t.parts.size() == 4);
        CHECK(t.parts[0].alpha.value == Rational(-7, 8));
        CHECK(t.parts[1].alpha.value == Rational(-5, 8));
        CHECK(t.parts[2].alpha.value == Rational(-3, 8));
        CHECK(t.parts[3].alpha.value == Rational(-1, 8));
        for (const auto& part : t.parts) CHECK(part.blocks == std::vector<int>{1});
        // Agrees with the float backend.
        auto tf = local_type(to_field<Complex>(m), cfg);
        REQUIRE(tf.parts.size() == 4);
        for (size_t i = 0; i < 4; ++i) CHECK(tf.parts[i].alpha.value == t.parts[i].alpha.value);
    }
    SUBCASE("order-12 primitive eigenvalues") {
        // Companion of x^4 - x^2 + 1; alphas a/12 - 1 for a in {1,5,7,11}.
        auto m = mat_int({{0, 0, 0, -1}, {1, 0, 0, 0}, {0, 1, 0, 1}, {0, 0, 1, 0}});
        auto t = local_type(m, cfg);
        REQUIRE(t.parts.size() == 4);
        CHECK(t.parts[0].alpha.value == Rational(-11, 12));
        CHECK(t.parts[1].alpha.value == Rational(-7, 12));
        CHECK(t.parts[2].alpha.value == Rational(-5, 12));
        CHECK(t.parts[3].alpha.value == Rational(-1, 12));
    }
    SUBCASE("order-6 semisimple with 2-blocks on a Galois orbit") {
        // [[C, I], [0, C]] with C the companion of x^2 - x + 1 (zeta_6).
        auto m = mat_int({{0, -1, 1, 0}, {1, 1, 0, 1}, {0, 0, 0, -1}, {0, 0, 1, 1}});
        auto t = local_type(m, cfg);
        REQUIRE(t.parts.size() == 2);
        CHECK(t.parts[0].alpha.value == Rational(-5, 6));
        CHECK(t.parts[0].blocks == std::vector<int>{2});
        CHECK(t.parts[1].alpha.value == Rational(-1, 6));
        CHECK(t.parts[1].blocks == std::vector<int>{2});
        // Lattice dims see no unipotent part: everything passes through.
        auto d = lattice_dims(t);
        CHECK(d.d0 == 4);
        CHECK(d.d1 == 4);
    }
    SUBCASE("float backend agrees on a conjugated mixed case") {
        auto m = mat_int({{-1, 0, 0}, {0, 1, 1}, {0, 0, 1}});
        std::mt19937_64 rng(5);
        auto p = random_invertible(rng, 3);
        auto conj = p * m * inverse(p);
        auto t_exact = local_type(conj, cfg);
        auto t_float = local_type(to_field<Complex>(conj), cfg);
        REQUIRE(t_exact.parts.size() == t_float.parts.size());
        for (size_t i = 0; i < t_exact.parts.size(); ++i) {
            CHECK(t_exact.parts[i].alpha.value == t_float.parts[i].alpha.value);
            CHECK(t_exact.parts[i].blocks == t_float.parts[i].blocks);
        }
    }
}

TEST_CASE("weight_filtration on the stated cases") {
    SUBCASE("zero operator") {
        auto wf = weight_filtration(Matrix<GaussianRational>(3, 3), cfg);
        CHECK(wf.dim_w(-1) == 0);
        CHECK(wf.dim_w(0) == 3);
    }
    SUBCASE("single 2-block") {
        auto wf = weight_filtration(mat_int({{0, 1}, {0, 0}}), cfg);
        CHECK(wf.dim_w(1) - wf.dim_w(0) == 1);  // Gr_1
        CHECK(wf.dim_w(-1) - wf.dim_w(-2) == 1); // Gr_{-1}
        CHECK(wf.dim_w(0) == wf.dim_w(-1));
        CHECK(verify_weight_axioms(mat_int({{0, 1}, {0, 0}}), wf, cfg.tau));
    }
    SUBCASE("single 3-block: graded dims 1 at k in {2,0,-2}") {
        auto n3 = mat_int({{0, 1, 0}, {0, 0, 1}, {0, 0, 0}});
        auto wf = weight_filtration(n3, cfg);
        CHECK(wf.k_min == -2);
        CHECK(wf.k_max == 2);
        CHECK(wf.graded == std::vector<int>{1, 0, 1, 0, 1});
        CHECK(verify_weight_axioms(n3, wf, cfg.tau));
    }
    SUBCASE("non-nilpotent input is rejected") {
        CHECK_THROWS(weight_filtration(Matrix<GaussianRational>::identity(2), cfg));
    }
}

TEST_CASE("weight filtration axioms on random nilpotents") {
    std::mt19937_64 rng(31);
    for (int t = 0; t < 40; ++t) {
        int n = 2 + static_cast<int>(rng() % 7); // dimension <= 8
        auto nil = random_nilpotent(rng, n);
        auto wf = weight_filtration(nil, cfg);
        CHECK(verify_weight_axioms(nil, wf, cfg.tau));
    }
}

TEST_CASE("weight filtration scaling invariance W(cN) = W(N)") {
    std::mt19937_64 rng(37);
    for (int t = 0; t < 15; ++t) {
        int n = 2 + static_cast<int>(rng() % 5);
        auto nil = random_nilpotent(rng, n);
        auto wf = weight_filtration(nil, cfg);
        for (int c : {2, 3, 5}) {
            auto scaled = weight_filtration(GaussianRational(c) * nil, cfg);
            REQUIRE(scaled.k_min == wf.k_min);
            REQUIRE(scaled.k_max == wf.k_max);
            for (int k = wf.k_min; k <= wf.k_max; ++k) {
                // Canonicalized bases of equal spans compare equal.
                CHECK(column_space_basis(scaled.w_basis(k, n)) == column_space_basis(wf.w_basis(k, n)));
            }
        }
    }
}

TEST_CASE("pullback_local_type") {
    CHECK(pullback_local_type(lt(1, {{Rational(-1, 2), {1}}}), 2).parts[0].alpha.value == 0);
    auto t = lt(3, {{Rational(-1, 3), {2}}, {Rational(-2, 3), {1}}});
    SUBCASE("n_p = 1 is the identity") {
        auto u = pullback_local_type(t, 1);
        REQUIRE(u.parts.size() == 2);
        CHECK(u.parts[0].alpha.value == Rational(-2, 3));
        CHECK(u.parts[1].blocks == std::vector<int>{2});
    }
    SUBCASE("n_p = 3 rotates both to zero and merges blocks") {
        auto u = pullback_local_type(t, 3);
        REQUIRE(u.parts.size() == 1);
        CHECK(u.parts[0].alpha.value == 0);
        CHECK(u.parts[0].blocks == std::vector<int>{2, 1});
    }
    SUBCASE("composition: pullback by m*n = pullback by n then m") {
        std::mt19937_64 rng(41);
        for (int trial = 0; trial < 20; ++trial) {
            long den = 1 + static_cast<long>(rng() % 11);
            long num = static_cast<long>(rng() % den);
            auto base = lt(2, {{num == 0 ? Rational(0) : Rational(-num, den), {1, 1}}});
            int m = 1 + static_cast<int>(rng() % 5), n_p = 1 + static_cast<int>(rng() % 5);
            auto once = pullback_local_type(base, m * n_p);
            auto twice = pullback_local_type(pullback_local_type(base, n_p), m);
            REQUIRE(once.parts.size() == twice.parts.size());
            for (size_t i = 0; i < once.parts.size(); ++i) {
                CHECK(once.parts[i].alpha.value == twice.parts[i].alpha.value);
                CHECK(once.parts[i].blocks == twice.parts[i].blocks);
            }
        }
    }
}

TEST_CASE("growth_exponents") {
    auto g1 = growth_exponents(lt(2, {{Rational(0), {2}}}));
    REQUIRE(g1.size() == 2);
    CHECK(g1[0].k == 1);
    CHECK(g1[1].k == -1);
    CHECK(g1[0].multiplicity == 1);

    auto g2 = growth_exponents(lt(1, {{Rational(0), {1}}}));
    REQUIRE(g2.size() == 1);
    CHECK(g2[0].k == 0);

    auto g3 = growth_exponents(lt(1, {{Rational(-1, 2), {1}}}));
    REQUIRE(g3.size() == 1);
    CHECK(g3[0].beta.value == Rational(-1, 2));
    CHECK(g3[0].k == 0);

    // Multiplicities per part sum to the part dimension.
    auto t = lt(6, {{Rational(-1, 4), {3, 1}}, {Rational(0), {2}}});
    std::map<Rational, int> mult;
    for (const auto& e : growth_exponents(t)) mult[e.beta.value] += e.multiplicity;
    CHECK(mult[Rational(-1, 4)] == 4);
    CHECK(mult[Rational(0)] == 2);
}

TEST_CASE("lattice_dims: the derived table") {
    auto d1 = lattice_dims(lt(2, {{Rational(0), {2}}}));
    CHECK(d1.d0 == 1);
    CHECK(d1.d1 == 0);
    auto d2 = lattice_dims(lt(1, {{Rational(0), {1}}}));
    CHECK(d2.d0 == 1);
    CHECK(d2.d1 == 0);
    auto d3 = lattice_dims(lt(1, {{Rational(-1, 2), {1}}}));
    CHECK(d3.d0 == 1);
    CHECK(d3.d1 == 1);
    // General (k, beta) fiber dims.
    auto t = lt(3, {{Rational(-1, 2), {1}}, {Rational(0), {2}}});
    CHECK(deligne_fiber_dim(t, Rational(0)) == 3);
    CHECK(m_lattice_fiber_dim(t, 1, Rational(0)) == 3);   // W_1 contains everything for a 2-block
    CHECK(m_lattice_fiber_dim(t, 0, Rational(0)) == 2);
    CHECK(m_lattice_fiber_dim(t, -2, Rational(-1)) == 1);
    CHECK(m_lattice_fiber_dim(t, 0, Rational(-1, 2)) == 3); // 1-block at weight 0
}

TEST_CASE("local_h0") {
    CHECK(local_h0(lt(2, {{Rational(0), {2}}})) == 1);
    CHECK(local_h0(lt(2, {{Rational(-1, 2), {1, 1}}})) == 0);
    CHECK(local_h0(lt(3, {{Rational(0), {1, 1, 1}}})) == 3);
    // local_h0 <= dim of the unipotent part, and equals sum_{k<=0} Gr_k.
    std::mt19937_64 rng(43);
    for (int t = 0; t < 20; ++t) {
        std::vector<int> blocks;
        int total = 0;
        while (total < 5) {
            int b = 1 + static_cast<int>(rng() % 3);
            blocks.push_back(b);
            total += b;
        }
        auto typ = lt(total, {{Rational(0), blocks}});
        int h0 = local_h0(typ);
        CHECK(h0 <= total);
        int graded_sum = 0;
        for (const auto& [k, d] : graded_weight_dims(blocks))
            if (k <= 0) graded_sum += d;
        CHECK(h0 == graded_sum);
    }
}
