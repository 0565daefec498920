#include "l2curve/unit_eigen.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

namespace l2c {

// ---------------------------------------------------------------------------
// PolyQ

int PolyQ::degree() const { return static_cast<int>(c.size()) - 1; }

void PolyQ::trim() {
    while (!c.empty() && c.back().is_zero()) c.pop_back();
}

PolyQ PolyQ::x_power(int n) {
    PolyQ p;
    p.c.assign(n + 1, GaussianRational{});
    p.c[n] = GaussianRational{1};
    return p;
}

PolyQ PolyQ::constant(GaussianRational v) {
    PolyQ p;
    p.c.push_back(std::move(v));
    p.trim();
    return p;
}

PolyQ PolyQ::derivative() const {
    PolyQ d;
    for (size_t k = 1; k < c.size(); ++k) d.c.push_back(GaussianRational{Rational(static_cast<long>(k))} * c[k]);
    d.trim();
    return d;
}

PolyQ PolyQ::monic() const {
    PolyQ p = *this;
    p.trim();
    if (p.c.empty()) return p;
    GaussianRational lead = p.c.back();
    for (auto& v : p.c) v /= lead;
    return p;
}

Matrix<GaussianRational> PolyQ::eval(const Matrix<GaussianRational>& m) const {
    int n = m.rows();
    Matrix<GaussianRational> acc(n, n);
    for (size_t k = c.size(); k-- > 0;) {
        acc = acc * m;
        for (int i = 0; i < n; ++i) acc(i, i) += c[k];
    }
    return acc;
}

PolyQ operator*(const PolyQ& a, const PolyQ& b) {
    PolyQ r;
    if (a.c.empty() || b.c.empty()) return r;
    r.c.assign(a.c.size() + b.c.size() - 1, GaussianRational{});
    for (size_t i = 0; i < a.c.size(); ++i)
        for (size_t j = 0; j < b.c.size(); ++j) r.c[i + j] += a.c[i] * b.c[j];
    r.trim();
    return r;
}

PolyQ operator-(const PolyQ& a, const PolyQ& b) {
    PolyQ r = a;
    if (r.c.size() < b.c.size()) r.c.resize(b.c.size());
    for (size_t i = 0; i < b.c.size(); ++i) r.c[i] -= b.c[i];
    r.trim();
    return r;
}

PolyQ poly_divmod(const PolyQ& a, const PolyQ& b, PolyQ* remainder) {
    PolyQ r = a, q;
    r.trim();
    PolyQ d = b;
    d.trim();
    if (d.c.empty()) throw InternalError("polynomial division by zero");
    q.c.assign(r.c.size(), GaussianRational{});
    while (r.degree() >= d.degree() && !r.c.empty()) {
        int shift = r.degree() - d.degree();
        GaussianRational f = r.c.back() / d.c.back();
        q.c[shift] += f;
        for (size_t i = 0; i < d.c.size(); ++i) r.c[shift + i] -= f * d.c[i];
        r.trim();
    }
    q.trim();
    if (remainder) *remainder = r;
    return q;
}

PolyQ poly_gcd(PolyQ a, PolyQ b) {
    a.trim();
    b.trim();
    while (!b.c.empty()) {
        PolyQ rem;
        poly_divmod(a, b, &rem);
        a = b;
        b = rem;
    }
    return a.monic();
}

PolyQ cyclotomic(int q) {
    // (x^q - 1) / prod_{d | q, d < q} Phi_d, by exact division.
    PolyQ num = PolyQ::x_power(q) - PolyQ::x_power(0);
    for (int d = 1; d < q; ++d) {
        if (q % d != 0) continue;
        PolyQ rem;
        num = poly_divmod(num, cyclotomic(d), &rem);
        if (!rem.c.empty()) throw InternalError("cyclotomic division remainder");
    }
    return num;
}

PolyQ charpoly(const Matrix<GaussianRational>& m) {
    // Faddeev-LeVerrier.
    if (!m.is_square()) throw InputError("charpoly of non-square matrix");
    int n = m.rows();
    PolyQ p;
    p.c.assign(n + 1, GaussianRational{});
    p.c[n] = GaussianRational{1};
    Matrix<GaussianRational> mk = Matrix<GaussianRational>::identity(n);
    for (int k = 1; k <= n; ++k) {
        mk = m * mk;
        GaussianRational tr{};
        for (int i = 0; i < n; ++i) tr += mk(i, i);
        GaussianRational ck = -(tr / GaussianRational{Rational(k)});
        p.c[n - k] = ck;
        for (int i = 0; i < n; ++i) mk(i, i) += ck;
    }
    return p;
}

Matrix<GaussianRational> semisimple_part(const Matrix<GaussianRational>& t) {
    int n = t.rows();
    PolyQ f = charpoly(t);
    PolyQ g = poly_gcd(f, f.derivative());
    PolyQ rem;
    PolyQ fred = poly_divmod(f, g, &rem).monic();
    PolyQ fred_d = fred.derivative();
    Matrix<GaussianRational> a = t;
    int steps = 1;
    while ((1 << steps) < n + 1) ++steps;
    for (int it = 0; it <= steps; ++it) {
        Matrix<GaussianRational> num = fred.eval(a);
        if (num.is_zero(0)) break;
        a = a - num * inverse(fred_d.eval(a));
    }
    if (!fred.eval(a).is_zero(0)) throw InternalError("Jordan-Chevalley iteration did not converge");
    return a;
}

// ---------------------------------------------------------------------------
// Exact unit-circle decomposition

namespace {

RotationNumber alpha_of(long a, long q) {
    // e^{2 pi i a/q} with 0 <= a < q maps to a/q - 1 for a > 0, else 0.
    if (a == 0) return RotationNumber(Rational(0));
    return RotationNumber(Rational(a, q) - 1);
}

void classify_failure(const Matrix<GaussianRational>& m, const NumericConfig& cfg) {
    if (!quasi_unitary_numeric(to_complex_matrix(m), cfg.tau))
        throw NotQuasiUnitary("not quasi-unitary: eigenvalue off the unit circle");
    throw IrrationalRotation("irrational rotation unsupported");
}

} // namespace

std::vector<UnitEigenPart<GaussianRational>> eig_unit_circle(const Matrix<GaussianRational>& m,
                                                             const NumericConfig& cfg) {
    using G = GaussianRational;
    int n = m.rows();
    if (rank(m) != n) throw InputError("eig_unit_circle of non-invertible matrix");
    Matrix<G> ts = semisimple_part(m);
    auto order = matrix_order(ts, cfg.order_cap);
    if (!order) classify_failure(m, cfg);

    std::vector<UnitEigenPart<G>> parts;
    int total = 0;
    for (long q = 1; q <= *order; ++q) {
        if (*order % q != 0) continue;
        if (q == 1 || q == 2) {
            G lambda = FieldTraits<G>::from_int(q == 1 ? 1 : -1);
            Matrix<G> shifted = ts;
            for (int i = 0; i < n; ++i) shifted(i, i) -= lambda;
            Matrix<G> basis = kernel_basis(shifted);
            if (basis.cols() == 0) continue;
            parts.push_back({{alpha_of(q == 1 ? 0 : 1, q)}, basis});
            total += basis.cols();
        } else if (q == 4) {
            for (int sign : {+1, -1}) {
                G lambda = sign > 0 ? gauss_i() : -gauss_i();
                Matrix<G> shifted = ts;
                for (int i = 0; i < n; ++i) shifted(i, i) -= lambda;
                Matrix<G> basis = kernel_basis(shifted);
                if (basis.cols() == 0) continue;
                parts.push_back({{alpha_of(sign > 0 ? 1 : 3, 4)}, basis});
                total += basis.cols();
            }
        } else {
            // One or two Galois orbits over Q(i).
            std::vector<std::pair<PolyQ, std::vector<RotationNumber>>> orbits;
            PolyQ phi = cyclotomic(static_cast<int>(q));
            auto primitive_alphas = [&](int residue_mod_4) {
                std::vector<RotationNumber> as;
                for (long a = 1; a < q; ++a)
                    if (std::gcd(a, q) == 1 && (residue_mod_4 < 0 || a % 4 == residue_mod_4))
                        as.push_back(alpha_of(a, q));
                return as;
            };
            if (q % 4 != 0) {
                orbits.push_back({phi, primitive_alphas(-1)});
            } else {
                PolyQ split_plus = PolyQ::x_power(static_cast<int>(q / 4)) - PolyQ::constant(gauss_i());
                PolyQ split_minus = PolyQ::x_power(static_cast<int>(q / 4)) - PolyQ::constant(-gauss_i());
                orbits.push_back({poly_gcd(phi, split_plus), primitive_alphas(1)});
                orbits.push_back({poly_gcd(phi, split_minus), primitive_alphas(3)});
            }
            for (auto& [g, alphas] : orbits) {
                Matrix<G> basis = kernel_basis(g.eval(ts));
                if (basis.cols() == 0) continue;
                if (basis.cols() % alphas.size() != 0)
                    throw InternalError("orbit eigenspace dimension not divisible by orbit size");
                parts.push_back({alphas, basis});
                total += basis.cols();
            }
        }
    }
    if (total != n) throw InternalError("unit-circle decomposition does not fill the space");
    std::sort(parts.begin(), parts.end(),
              [](const auto& a, const auto& b) { return a.alphas.front() < b.alphas.front(); });
    return parts;
}

// ---------------------------------------------------------------------------
// Float path

std::vector<Complex> complex_eigenvalues(const Matrix<Complex>& m) {
    Eigen::MatrixXcd e(m.rows(), m.cols());
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) e(i, j) = m(i, j);
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(e, false);
    std::vector<Complex> out(m.rows());
    for (int i = 0; i < m.rows(); ++i) out[i] = solver.eigenvalues()(i);
    return out;
}

std::vector<EigenCluster> eigenvalue_clusters(const Matrix<Complex>& m) {
    int n = std::max(1, m.rows());
    auto eigs = complex_eigenvalues(m);
    double scale = std::max(1.0, m.max_abs());
    double radius = 20.0 * std::pow(2.2e-16 * scale, 1.0 / n);
    radius = std::min(radius, 0.2); // never merge genuinely distinct desk-scale rotations
    std::vector<EigenCluster> clusters;
    for (const Complex& z : eigs) {
        bool merged = false;
        for (auto& c : clusters) {
            if (std::abs(z - c.mean) < radius) {
                c.mean = (c.mean * static_cast<double>(c.multiplicity) + z) /
                         static_cast<double>(c.multiplicity + 1);
                ++c.multiplicity;
                merged = true;
                break;
            }
        }
        if (!merged) clusters.push_back({z, 1});
    }
    return clusters;
}

bool quasi_unitary_numeric(const Matrix<Complex>& m, double tau) {
    for (const EigenCluster& c : eigenvalue_clusters(m))
        if (std::abs(std::abs(c.mean) - 1.0) > std::max(tau, 1e-7)) return false;
    return true;
}

std::vector<UnitEigenPart<Complex>> eig_unit_circle(const Matrix<Complex>& m, const NumericConfig& cfg) {
    int n = m.rows();
    if (rank(m, cfg.tau) != n) throw InputError("eig_unit_circle of non-invertible matrix");
    if (!quasi_unitary_numeric(m, cfg.tau))
        throw NotQuasiUnitary("not quasi-unitary: eigenvalue off the unit circle");
    auto clusters = eigenvalue_clusters(m);

    std::vector<UnitEigenPart<Complex>> parts;
    int total = 0;
    for (const EigenCluster& cluster : clusters) {
        double theta = std::arg(cluster.mean);
        double alpha_real = theta / (2 * M_PI);
        if (alpha_real > 1e-12) alpha_real -= 1.0;
        if (alpha_real <= -1.0) alpha_real += 1.0;
        auto alpha_rat = rationalize(alpha_real, cfg.order_cap, 1e-6);
        if (!alpha_rat) throw IrrationalRotation("irrational rotation unsupported");
        // (T - lambda)^mult kernel; powering keeps the generalized eigenspace.
        Matrix<Complex> shifted = m;
        for (int i = 0; i < n; ++i) shifted(i, i) -= cluster.mean;
        Matrix<Complex> p = Matrix<Complex>::identity(n);
        for (int k = 0; k < cluster.multiplicity; ++k) p = p * shifted;
        Matrix<Complex> basis = kernel_basis(p, cfg.tau);
        if (basis.cols() != cluster.multiplicity)
            throw InternalError("generalized eigenspace dimension mismatch (float)");
        parts.push_back({{RotationNumber::reduce(*alpha_rat)}, basis});
        total += basis.cols();
    }
    if (total != n) throw InternalError("unit-circle decomposition does not fill the space (float)");
    std::sort(parts.begin(), parts.end(),
              [](const auto& a, const auto& b) { return a.alphas.front() < b.alphas.front(); });
    return parts;
}

} // namespace l2c
