#include "doctest.h"

#include "l2curve/matrix.hpp"
#include "l2curve/unit_eigen.hpp"
#include "test_util.hpp"

#include <random>

using namespace l2c;
using namespace l2c::testutil;

TEST_CASE("scalar parsing and formatting round trip") {
    CHECK(parse_gaussian("3/4") == GaussianRational(Rational(3, 4)));
    CHECK(parse_gaussian("-2") == GaussianRational(-2));
    CHECK(parse_gaussian("1/2+1/3i") == GaussianRational(Rational(1, 2), Rational(1, 3)));
    CHECK(parse_gaussian("1/2-1/3i") == GaussianRational(Rational(1, 2), Rational(-1, 3)));
    CHECK(parse_gaussian("i") == gauss_i());
    CHECK(parse_gaussian("-i") == -gauss_i());
    CHECK(parse_gaussian("0.25") == GaussianRational(Rational(1, 4)));
    for (const char* s : {"3/4", "-2", "1/2+1/3i", "-1/2-5i", "i"}) {
        GaussianRational v = parse_gaussian(s);
        CHECK(parse_gaussian(format_gaussian(v)) == v);
    }
}

TEST_CASE("rank on the stated cases") {
    CHECK(rank(Matrix<GaussianRational>::identity(3)) == 3);
    CHECK(rank(Matrix<GaussianRational>(2, 5)) == 0);
    CHECK(rank(mat_int({{1, 1}, {1, 1}})) == 1);
    CHECK(rank(Matrix<Complex>::identity(3)) == 3);
    CHECK(rank(mat_cplx({{{1, 0}, {1, 0}}, {{1, 0}, {1, 0}}})) == 1);
}

TEST_CASE("kernel basis on the stated cases") {
    CHECK(kernel_basis(Matrix<GaussianRational>::identity(2)).cols() == 0);
    CHECK(kernel_basis(Matrix<GaussianRational>(3, 3)).cols() == 3);
    auto k = kernel_basis(mat_int({{0, 1}, {0, 0}}));
    REQUIRE(k.cols() == 1);
    CHECK(k(0, 0) == GaussianRational(1));
    CHECK(k(1, 0) == GaussianRational(0));
}

TEST_CASE("rank + nullity = cols on random matrices") {
    std::mt19937_64 rng(7);
    for (int t = 0; t < 50; ++t) {
        int r = 1 + static_cast<int>(rng() % 5), c = 1 + static_cast<int>(rng() % 5);
        auto m = random_int_matrix(rng, r, c, 3);
        auto ker = kernel_basis(m);
        CHECK(rank(m) + ker.cols() == c);
        // m v = 0 for every returned column.
        for (int j = 0; j < ker.cols(); ++j) {
            std::vector<GaussianRational> v(c);
            for (int i = 0; i < c; ++i) v[i] = ker(i, j);
            for (const auto& entry : m.apply(v)) CHECK(entry == GaussianRational(0));
        }
    }
}

TEST_CASE("rank invariance under permutations and invertible factors") {
    std::mt19937_64 rng(11);
    for (int t = 0; t < 100; ++t) {
        int n = 2 + static_cast<int>(rng() % 3);
        auto m = random_int_matrix(rng, n, n, 2);
        int r = rank(m);
        auto p = random_invertible(rng, n);
        CHECK(rank(p * m) == r);
        CHECK(rank(m * p) == r);
        // Row swap.
        auto swapped = m;
        for (int j = 0; j < n; ++j) std::swap(swapped(0, j), swapped(n - 1, j));
        CHECK(rank(swapped) == r);
    }
}

TEST_CASE("matrix_order") {
    NumericConfig cfg;
    CHECK(matrix_order(mat_int({{0, -1}, {1, 0}}), cfg.order_cap) == 4);
    CHECK(matrix_order(Matrix<GaussianRational>::identity(3), cfg.order_cap) == 1);
    CHECK(!matrix_order(mat_int({{1, 1}, {0, 1}}), 12).has_value());
    CHECK_THROWS(matrix_order(mat_int({{1, 1}, {1, 1}}), 10));
}

TEST_CASE("nilpotent_log on the stated cases") {
    CHECK(nilpotent_log(Matrix<GaussianRational>::identity(3)).is_zero(0));
    CHECK(nilpotent_log(mat_int({{1, 1}, {0, 1}})) == mat_int({{0, 1}, {0, 0}}));
    auto n3 = nilpotent_log(mat_int({{1, 1, 0}, {0, 1, 1}, {0, 0, 1}}));
    CHECK(n3 == mat_exact({{"0", "1", "-1/2"}, {"0", "0", "1"}, {"0", "0", "0"}}));
    CHECK_THROWS(nilpotent_log(mat_int({{2, 0}, {0, 1}})));
}

TEST_CASE("exp inverts nilpotent_log on random unipotents") {
    std::mt19937_64 rng(13);
    for (int t = 0; t < 40; ++t) {
        int n = 2 + static_cast<int>(rng() % 4);
        auto u = random_unipotent(rng, n);
        auto log_u = nilpotent_log(u);
        CHECK(matrix_exp_nilpotent(log_u) == u);
    }
}

TEST_CASE("charpoly and semisimple part") {
    auto j = mat_int({{1, 1}, {0, 1}});
    auto p = charpoly(j); // (x-1)^2 = x^2 - 2x + 1
    REQUIRE(p.degree() == 2);
    CHECK(p.c[0] == GaussianRational(1));
    CHECK(p.c[1] == GaussianRational(-2));
    CHECK(p.c[2] == GaussianRational(1));
    CHECK(semisimple_part(j) == Matrix<GaussianRational>::identity(2));

    std::mt19937_64 rng(17);
    for (int t = 0; t < 20; ++t) {
        // T = P (D * U) P^{-1} with D = diag of 4th roots of unity, U unipotent
        // commuting with D (upper triangular within equal-eigenvalue runs).
        int n = 3;
        Matrix<GaussianRational> d(n, n);
        GaussianRational vals[4] = {GaussianRational(1), GaussianRational(-1), gauss_i(), -gauss_i()};
        GaussianRational lambda = vals[rng() % 4];
        for (int i = 0; i < n; ++i) d(i, i) = lambda;
        auto u = random_unipotent(rng, n, 1);
        auto pm = random_invertible(rng, n);
        auto t_mat = pm * (d * u) * inverse(pm);
        auto ts = semisimple_part(t_mat);
        CHECK(ts == pm * d * inverse(pm));
    }
}

TEST_CASE("cyclotomic polynomials") {
    auto phi1 = cyclotomic(1);
    CHECK(phi1.degree() == 1);
    auto phi4 = cyclotomic(4); // x^2 + 1
    REQUIRE(phi4.degree() == 2);
    CHECK(phi4.c[0] == GaussianRational(1));
    CHECK(phi4.c[1] == GaussianRational(0));
    auto phi6 = cyclotomic(6); // x^2 - x + 1
    REQUIRE(phi6.degree() == 2);
    CHECK(phi6.c[1] == GaussianRational(-1));
    auto phi12 = cyclotomic(12); // x^4 - x^2 + 1
    REQUIRE(phi12.degree() == 4);
    CHECK(phi12.c[2] == GaussianRational(-1));
}

TEST_CASE("eig_unit_circle exact: stated cases") {
    NumericConfig cfg;
    SUBCASE("unipotent gives the whole space at alpha = 0") {
        auto parts = eig_unit_circle(mat_int({{1, 1}, {0, 1}}), cfg);
        REQUIRE(parts.size() == 1);
        CHECK(parts[0].alphas.size() == 1);
        CHECK(parts[0].alphas[0].value == 0);
        CHECK(parts[0].basis.cols() == 2);
    }
    SUBCASE("diag(-1, 1)") {
        auto parts = eig_unit_circle(mat_int({{-1, 0}, {0, 1}}), cfg);
        REQUIRE(parts.size() == 2);
        CHECK(parts[0].alphas[0].value == Rational(-1, 2));
        CHECK(parts[0].basis.cols() == 1);
        CHECK(parts[0].basis(0, 0) == GaussianRational(1));
        CHECK(parts[1].alphas[0].value == 0);
        CHECK(parts[1].basis(1, 0) == GaussianRational(1));
    }
    SUBCASE("rotation matrix: eigenvalues +i, -i") {
        auto parts = eig_unit_circle(mat_int({{0, -1}, {1, 0}}), cfg);
        REQUIRE(parts.size() == 2);
        CHECK(parts[0].alphas[0].value == Rational(-3, 4));
        CHECK(parts[0].basis.cols() == 1);
        CHECK(parts[1].alphas[0].value == Rational(-1, 4));
        CHECK(parts[1].basis.cols() == 1);
    }
    SUBCASE("order-3 companion matrix: one Galois orbit") {
        auto parts = eig_unit_circle(mat_int({{0, -1}, {1, -1}}), cfg);
        REQUIRE(parts.size() == 1);
        REQUIRE(parts[0].alphas.size() == 2);
        CHECK(parts[0].alphas[0].value == Rational(-2, 3));
        CHECK(parts[0].alphas[1].value == Rational(-1, 3));
        CHECK(parts[0].basis.cols() == 2);
    }
    SUBCASE("eigenvalue off the unit circle is rejected") {
        CHECK_THROWS_AS((void)eig_unit_circle(mat_int({{2, 0}, {0, 1}}), cfg), NotQuasiUnitary);
    }
    SUBCASE("unit-circle but not a root of unity is rejected") {
        // x^2 - 3/2 x + 1: |lambda| = 1, irrational rotation.
        auto m = mat_exact({{"0", "-1"}, {"1", "3/2"}});
        CHECK_THROWS_AS((void)eig_unit_circle(m, cfg), IrrationalRotation);
    }
}

TEST_CASE("eig_unit_circle float: stated cases") {
    NumericConfig cfg;
    auto parts = eig_unit_circle(mat_cplx({{{0, 0}, {-1, 0}}, {{1, 0}, {0, 0}}}), cfg);
    REQUIRE(parts.size() == 2);
    CHECK(parts[0].alphas[0].value == Rational(-3, 4));
    CHECK(parts[1].alphas[0].value == Rational(-1, 4));
    CHECK_THROWS_AS((void)eig_unit_circle(mat_cplx({{{2, 0}, {0, 0}}, {{0, 0}, {1, 0}}}), cfg),
                    NotQuasiUnitary);
}

TEST_CASE("eig_unit_circle spaces are complementary") {
    NumericConfig cfg;
    std::mt19937_64 rng(23);
    for (int t = 0; t < 30; ++t) {
        int blocks = 1 + static_cast<int>(rng() % 3);
        std::vector<Matrix<GaussianRational>> diag;
        int n = 0;
        GaussianRational vals[4] = {GaussianRational(1), GaussianRational(-1), gauss_i(), -gauss_i()};
        for (int b = 0; b < blocks; ++b) {
            int sz = 1 + static_cast<int>(rng() % 2);
            Matrix<GaussianRational> blk(sz, sz);
            GaussianRational lambda = vals[rng() % 4];
            for (int i = 0; i < sz; ++i) {
                blk(i, i) = lambda;
                if (i + 1 < sz && rng() % 2) blk(i, i + 1) = lambda;
            }
            diag.push_back(blk);
            n += sz;
        }
        Matrix<GaussianRational> m(n, n);
        int off = 0;
        for (const auto& blk : diag) {
            for (int i = 0; i < blk.rows(); ++i)
                for (int j = 0; j < blk.cols(); ++j) m(off + i, off + j) = blk(i, j);
            off += blk.rows();
        }
        auto p = random_invertible(rng, n);
        m = p * m * inverse(p);
        auto parts = eig_unit_circle(m, cfg);
        int total = 0;
        for (const auto& part : parts) total += part.basis.cols();
        CHECK(total == n);
        for (size_t i = 0; i < parts.size(); ++i)
            for (size_t j = i + 1; j < parts.size(); ++j)
                CHECK(subspace_intersection(parts[i].basis, parts[j].basis).cols() == 0);
    }
}
