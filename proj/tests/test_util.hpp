#pragma once

#include "l2curve/matrix.hpp"

#include <random>
#include <string>
#include <vector>

namespace l2c::testutil {

inline Matrix<GaussianRational> mat_exact(const std::vector<std::vector<std::string>>& rows) {
    std::vector<std::vector<GaussianRational>> parsed;
    for (const auto& row : rows) {
        std::vector<GaussianRational> r;
        for (const auto& cell : row) r.push_back(parse_gaussian(cell));
        parsed.push_back(std::move(r));
    }
    return Matrix<GaussianRational>::from_rows(parsed);
}

inline Matrix<GaussianRational> mat_int(const std::vector<std::vector<int>>& rows) {
    std::vector<std::vector<GaussianRational>> parsed;
    for (const auto& row : rows) {
        std::vector<GaussianRational> r;
        for (int cell : row) r.push_back(GaussianRational(cell));
        parsed.push_back(std::move(r));
    }
    return Matrix<GaussianRational>::from_rows(parsed);
}

inline Matrix<Complex> mat_cplx(const std::vector<std::vector<Complex>>& rows) {
    return Matrix<Complex>::from_rows(rows);
}

template <class K> Matrix<K> to_field(const Matrix<GaussianRational>& m) {
    if constexpr (std::is_same_v<K, GaussianRational>) {
        return m;
    } else {
        Matrix<Complex> r(m.rows(), m.cols());
        for (int i = 0; i < m.rows(); ++i)
            for (int j = 0; j < m.cols(); ++j) r(i, j) = m(i, j).to_complex();
        return r;
    }
}

// Random integer matrix with entries in [-bound, bound].
inline Matrix<GaussianRational> random_int_matrix(std::mt19937_64& rng, int rows, int cols, int bound) {
    std::uniform_int_distribution<int> pick(-bound, bound);
    Matrix<GaussianRational> m(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) m(i, j) = GaussianRational(pick(rng));
    return m;
}

// Random unimodular-ish invertible matrix: product of elementary operations.
inline Matrix<GaussianRational> random_invertible(std::mt19937_64& rng, int n, int ops = 12) {
    std::uniform_int_distribution<int> pick_row(0, n - 1);
    std::uniform_int_distribution<int> pick_val(-2, 2);
    Matrix<GaussianRational> m = Matrix<GaussianRational>::identity(n);
    for (int t = 0; t < ops; ++t) {
        int i = pick_row(rng), j = pick_row(rng);
        if (i == j) continue;
        GaussianRational c(pick_val(rng));
        for (int k = 0; k < n; ++k) m(i, k) += c * m(j, k);
    }
    return m;
}

// Random strictly upper-triangular nilpotent conjugated invertibly.
inline Matrix<GaussianRational> random_nilpotent(std::mt19937_64& rng, int n, int bound = 2) {
    std::uniform_int_distribution<int> pick(-bound, bound);
    Matrix<GaussianRational> u(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) u(i, j) = GaussianRational(pick(rng));
    Matrix<GaussianRational> p = random_invertible(rng, n);
    return p * u * inverse(p);
}

inline Matrix<GaussianRational> random_unipotent(std::mt19937_64& rng, int n, int bound = 2) {
    return random_nilpotent(rng, n, bound) + Matrix<GaussianRational>::identity(n);
}

} // namespace l2c::testutil
