#include "l2curve/cohomology.hpp"

#include <cmath>
#include <random>

namespace l2c {

std::string to_string(Normalization n) { return n == Normalization::plain ? "plain" : "vonNeumann"; }

std::string to_string(StalkModel m) {
    switch (m) {
        case StalkModel::base: return "base";
        case StalkModel::extensionOfPullback: return "extensionOfPullback";
        default: return "pullbackOfExtension";
    }
}

CohomologyReport make_report(Rational h0, Rational h1, Rational h2, Normalization norm, StalkModel model) {
    CohomologyReport r;
    r.h0 = std::move(h0);
    r.h1 = std::move(h1);
    r.h2 = std::move(h2);
    r.chi = r.h0 - r.h1 + r.h2;
    r.normalization = norm;
    r.model = model;
    return r;
}

template <class K> LocalSystem<K> LocalSystem<K>::trivial(SurfaceData surf, int rank_n) {
    LocalSystem<K> sys;
    sys.surface = std::move(surf);
    sys.n = rank_n;
    sys.mats.assign(sys.surface.generator_count(), Matrix<K>::identity(rank_n));
    return sys;
}

namespace {

std::string generator_name(const SurfaceData& surf, int index) {
    int g = surf.genus;
    if (index < 2 * g) return (index % 2 == 0 ? "a" : "b") + std::to_string(index / 2 + 1);
    return "c" + std::to_string(index - 2 * g + 1);
}

template <class K> Matrix<K> commutator(const Matrix<K>& a, const Matrix<K>& b, double tau) {
    return a * b * inverse(a, tau) * inverse(b, tau);
}

// Iteratively intersected invariants of a list of operators.
template <class K>
Matrix<K> simultaneous_invariants(const std::vector<const Matrix<K>*>& ops, int n, double tau) {
    Matrix<K> basis = Matrix<K>::identity(n);
    for (const Matrix<K>* op : ops) {
        if (basis.cols() == 0) break;
        Matrix<K> shifted = (*op) * basis - basis;
        basis = basis * kernel_basis(shifted, tau);
    }
    return basis;
}

} // namespace

template <class K> void validate_local_system(const LocalSystem<K>& sys, const NumericConfig& cfg) {
    const SurfaceData& surf = sys.surface;
    if (static_cast<int>(sys.mats.size()) != surf.generator_count())
        throw InputError("local system has " + std::to_string(sys.mats.size()) + " matrices, expected " +
                         std::to_string(surf.generator_count()));
    for (size_t i = 0; i < sys.mats.size(); ++i) {
        const Matrix<K>& m = sys.mats[i];
        if (m.rows() != sys.n || m.cols() != sys.n)
            throw InputError("matrix at generator " + generator_name(surf, static_cast<int>(i)) + " has wrong size");
        if (rank(m, cfg.tau) != sys.n)
            throw InputError("matrix at generator " + generator_name(surf, static_cast<int>(i)) +
                             " is not invertible");
    }
    // prod [A_i, B_i] * prod T_p = I, within tau scaled by the product size.
    Matrix<K> acc = Matrix<K>::identity(sys.n);
    for (int i = 0; i < surf.genus; ++i)
        acc = acc * commutator(sys.mats[2 * i], sys.mats[2 * i + 1], cfg.tau);
    for (int p = 0; p < surf.s(); ++p) acc = acc * sys.meridian(p);
    Matrix<K> defect = acc - Matrix<K>::identity(sys.n);
    double scale = FieldTraits<K>::exact ? 1.0 : std::max(1.0, acc.max_abs());
    for (int i = 0; i < sys.n; ++i)
        for (int j = 0; j < sys.n; ++j)
            if (!FieldTraits<K>::is_zero(defect(i, j), scale, cfg.tau))
                throw InputError("relation violated: prod [a_i,b_i] prod c_p is not the identity");
    // Quasi-unitarity of the meridians (the VHS hypothesis).  Exact backend:
    // finite order of the semisimple factor settles it; otherwise (and in
    // float mode) test eigenvalue cluster means against the circle.
    for (int p = 0; p < surf.s(); ++p) {
        const Matrix<K>& t = sys.meridian(p);
        if constexpr (FieldTraits<K>::exact) {
            if (matrix_order(semisimple_part(t), cfg.order_cap, cfg.tau)) continue;
        }
        if (!quasi_unitary_numeric(to_complex_matrix(t), cfg.tau))
            throw NotQuasiUnitary("not quasi-unitary at generator " + generator_name(surf, 2 * surf.genus + p));
    }
}

template <class K> int stalk_dim(const Matrix<K>& t_p, const NumericConfig& cfg) {
    if (rank(t_p, cfg.tau) != t_p.rows()) throw InputError("stalk_dim of non-invertible matrix");
    Matrix<K> shifted = t_p - Matrix<K>::identity(t_p.rows());
    return t_p.rows() - rank(shifted, cfg.tau);
}

template <class K> CohomologyReport global_h(const LocalSystem<K>& sys, const NumericConfig& cfg) {
    validate_local_system(sys, cfg);
    int n = sys.n;
    std::vector<const Matrix<K>*> ops;
    for (const auto& m : sys.mats) ops.push_back(&m);
    long h0 = simultaneous_invariants(ops, n, cfg.tau).cols();

    // Coinvariants: n - dim sum_g Im(M_g - I).
    Matrix<K> stacked(n, 0);
    for (const auto& m : sys.mats) stacked = stacked.hstack(m - Matrix<K>::identity(n));
    long h2 = n - rank(stacked, cfg.tau);

    long chi = static_cast<long>(sys.surface.euler_open()) * n;
    for (int p = 0; p < sys.surface.s(); ++p) chi += stalk_dim(sys.meridian(p), cfg);
    long h1 = h0 + h2 - chi;
    if (h1 < 0) throw InternalError("negative h1 in global_h");
    return make_report(Rational(h0), Rational(h1), Rational(h2), Normalization::plain, StalkModel::base);
}

template <class K> int parabolic_h1(const LocalSystem<K>& sys, const NumericConfig& cfg) {
    validate_local_system(sys, cfg);
    int n = sys.n;
    int g = sys.surface.genus, s = sys.surface.s();
    // Fox derivatives of R = [a_1,b_1]...[a_g,b_g] c_1...c_s evaluated in the
    // representation:
    //   d/d a = P (I - A B A^{-1})
    //   d/d b = P (A - [A,B])
    //   d/d c_p = P_at_c_p
    // with P the image of the prefix preceding the factor.
    std::vector<Matrix<K>> fox;
    Matrix<K> prefix = Matrix<K>::identity(n);
    for (int i = 0; i < g; ++i) {
        const Matrix<K>& a = sys.mats[2 * i];
        const Matrix<K>& b = sys.mats[2 * i + 1];
        Matrix<K> comm = commutator(a, b, cfg.tau);
        Matrix<K> aba = a * b * inverse(a, cfg.tau);
        fox.push_back(prefix * (Matrix<K>::identity(n) - aba));
        fox.push_back(prefix * (a - comm));
        prefix = prefix * comm;
    }
    for (int p = 0; p < s; ++p) {
        fox.push_back(prefix);
        prefix = prefix * sys.meridian(p);
    }

    // Unknowns: x_{a_i}, x_{b_i} free in V; x_{c_p} = (T_p - I) y_p.  The
    // relation imposes sum fox_g x_g = 0.
    Matrix<K> system(n, 0);
    for (int i = 0; i < 2 * g; ++i) system = system.hstack(fox[i]);
    for (int p = 0; p < s; ++p) {
        Matrix<K> column_block = fox[2 * g + p] * (sys.meridian(p) - Matrix<K>::identity(n));
        system = system.hstack(column_block);
    }
    long solution_dim = system.cols() == 0 ? 0 : kernel_basis(system, cfg.tau).cols();
    // The y_p parametrization overcounts by ker(T_p - I) per puncture.
    long overcount = 0;
    for (int p = 0; p < s; ++p) overcount += stalk_dim(sys.meridian(p), cfg);
    long z_par = solution_dim - overcount;

    // Principal cocycles x = ((M_g - I) v).
    std::vector<const Matrix<K>*> ops;
    for (const auto& m : sys.mats) ops.push_back(&m);
    long h0 = simultaneous_invariants(ops, n, cfg.tau).cols();
    long b1 = n - h0;
    long h1 = z_par - b1;
    if (h1 < 0) throw InternalError("negative parabolic h1");
    return static_cast<int>(h1);
}

template <class K>
LocalSystem<K> induced_cover_system(const LocalSystem<K>& sys, const CoveringDatum& c, const NumericConfig& cfg) {
    if (!c.is_finite()) throw InputError("induced_cover_system needs a finite group (use character_family for Z^d)");
    validate_covering(c);
    const FiniteGroup& G = *c.group;
    LocalSystem<K> out;
    out.surface = sys.surface;
    out.n = sys.n * G.order();
    for (size_t i = 0; i < sys.mats.size(); ++i)
        out.mats.push_back(sys.mats[i].kron(G.regular_rep<K>(c.images[i])));
    (void)cfg;
    return out;
}

namespace {

// The small-model stalk: functions on the <h>-translation orbits of Gamma
// valued in ker(T_p - I), embedded in V (x) C[Gamma].
template <class K>
Matrix<K> small_stalk_basis(const LocalSystem<K>& sys, const CoveringDatum& c, int p, const NumericConfig& cfg) {
    const FiniteGroup& G = *c.group;
    int n = sys.n, order = G.order();
    Matrix<K> inv = kernel_basis(sys.meridian(p) - Matrix<K>::identity(n), cfg.tau);
    GroupElement h = c.images[2 * c.base.genus + p];
    std::vector<int> orbit_of(order, -1);
    int orbit_count = 0;
    for (GroupElement start = 0; start < order; ++start) {
        if (orbit_of[start] >= 0) continue;
        GroupElement x = start;
        while (orbit_of[x] < 0) {
            orbit_of[x] = orbit_count;
            x = G.mul(h, x);
        }
        ++orbit_count;
    }
    Matrix<K> basis(n * order, orbit_count * inv.cols());
    int col = 0;
    for (int orb = 0; orb < orbit_count; ++orb)
        for (int u = 0; u < inv.cols(); ++u, ++col)
            for (GroupElement gamma = 0; gamma < order; ++gamma) {
                if (orbit_of[gamma] != orb) continue;
                for (int i = 0; i < n; ++i) basis(i * order + gamma, col) = inv(i, u);
            }
    return basis;
}

} // namespace

template <class K>
CoverAnalysis analyze_cover(const LocalSystem<K>& sys, const CoveringDatum& c, const NumericConfig& cfg) {
    CoverAnalysis out;
    out.invariants = validate_covering(c);
    if (!c.is_finite()) throw InputError("analyze_cover needs a finite group (use character_family for Z^d)");
    const FiniteGroup& G = *c.group;
    long order = G.order();
    int s = sys.surface.s();

    LocalSystem<K> big = induced_cover_system(sys, c, cfg);
    CohomologyReport big_plain = global_h(big, cfg);

    for (int p = 0; p < s; ++p) {
        out.base_stalks.push_back(stalk_dim(sys.meridian(p), cfg));
        out.big_stalks.push_back(stalk_dim(big.meridian(p), cfg));
        int small = out.base_stalks[p] * static_cast<int>(order) / out.invariants.n_p[p];
        int q = out.big_stalks[p] - small;
        if (q < 0) throw InternalError("small stalk exceeds big stalk");
        out.q_dims.push_back(q);
    }
    out.divergent = false;
    for (int q : out.q_dims)
        if (q != 0) out.divergent = true;

    Rational denom(order);
    out.extension_of_pullback =
        make_report(big_plain.h0 / denom, big_plain.h1 / denom, big_plain.h2 / denom, Normalization::vonNeumann,
                    StalkModel::extensionOfPullback);

    // Six-term sequence of 0 -> small -> big -> (+)_p Q_p -> 0.
    long h0_big = static_cast<long>(big_plain.h0);
    long h0_small = h0_big;
    long q_total = 0;
    for (int q : out.q_dims) q_total += q;
    if (q_total > 0) {
        std::vector<const Matrix<K>*> ops;
        for (const auto& m : big.mats) ops.push_back(&m);
        Matrix<K> w = simultaneous_invariants(ops, big.n, cfg.tau);
        for (int p = 0; p < s; ++p) {
            if (out.q_dims[p] == 0 || w.cols() == 0) continue;
            Matrix<K> s_p = small_stalk_basis(sys, c, p, cfg);
            w = subspace_intersection(w, s_p, cfg.tau);
        }
        h0_small = w.cols();
    }
    long rank_ev = h0_big - h0_small;
    long coker = q_total - rank_ev;
    if (coker < 0) throw InternalError("negative cokernel in the six-term sequence");
    long h1_small = static_cast<long>(big_plain.h1) + coker;
    long h2_small = static_cast<long>(big_plain.h2);
    out.pullback_of_extension =
        make_report(Rational(h0_small) / denom, Rational(h1_small) / denom, Rational(h2_small) / denom,
                    Normalization::vonNeumann, StalkModel::pullbackOfExtension);
    return out;
}

template <class K>
CohomologyReport l2_cohomology_finite(const LocalSystem<K>& sys, const CoveringDatum& c, StalkModel model,
                                      const NumericConfig& cfg) {
    if (model == StalkModel::base) throw InputError("l2_cohomology_finite expects a cover stalk model");
    CoverAnalysis a = analyze_cover(sys, c, cfg);
    return model == StalkModel::extensionOfPullback ? a.extension_of_pullback : a.pullback_of_extension;
}

template <class K>
RiemannHurwitzRecord riemann_hurwitz_check(const LocalSystem<K>& sys, const CoveringDatum& c,
                                           const NumericConfig& cfg) {
    CoverAnalysis a = analyze_cover(sys, c, cfg);
    CohomologyReport base = global_h(sys, cfg);
    RiemannHurwitzRecord rec;
    rec.lhs = a.pullback_of_extension.chi;
    rec.rhs = base.chi;
    for (int p = 0; p < sys.surface.s(); ++p) {
        rec.lhs -= Rational(a.base_stalks[p]) / Rational(a.invariants.n_p[p]);
        rec.rhs -= Rational(a.base_stalks[p]);
    }
    rec.equal = rec.lhs == rec.rhs;
    return rec;
}

template <class K>
CharacterFamily character_family(const LocalSystem<K>& sys, const CoveringDatum& c, int samples,
                                 std::uint64_t seed, const NumericConfig& cfg) {
    if (c.is_finite() && c.group->order() == 1) {
        // Degenerate rank-0 family: the single trivial character.
        CohomologyReport base = global_h(sys, cfg);
        CharacterFamily fam;
        CharacterSample triv;
        triv.dims = {static_cast<long>(base.h0), static_cast<long>(base.h1), static_cast<long>(base.h2)};
        fam.samples.push_back(triv);
        fam.generic = triv.dims;
        for (int i = 0; i < 3; ++i) fam.von_neumann[i] = Rational(fam.generic[i]);
        return fam;
    }
    if (c.is_finite() || !c.abelian) throw InputError("character_family needs a Z^d cover");
    validate_covering(c); // enforces trivial meridian images
    int d = c.abelian->d;
    int g = sys.surface.genus, s = sys.surface.s();

    // Twisted systems are evaluated in the floating backend.
    LocalSystem<Complex> base;
    base.surface = sys.surface;
    base.n = sys.n;
    for (const auto& m : sys.mats) base.mats.push_back(to_complex_matrix(m));

    auto eval_at = [&](const std::vector<double>& theta) {
        LocalSystem<Complex> twisted = base;
        for (int i = 0; i < 2 * g + s; ++i) {
            double phase = 0;
            for (int k = 0; k < d; ++k) phase += theta[k] * static_cast<double>(c.abelian_images[i][k]);
            twisted.mats[i] = Complex(std::polar(1.0, phase)) * twisted.mats[i];
        }
        CohomologyReport r = global_h(twisted, cfg);
        return std::array<long, 3>{static_cast<long>(r.h0), static_cast<long>(r.h1), static_cast<long>(r.h2)};
    };

    CharacterFamily fam;
    CharacterSample trivial;
    trivial.theta.assign(d, 0.0);
    trivial.dims = eval_at(trivial.theta);
    fam.samples.push_back(trivial);

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> angle(0.0, 2 * M_PI);
    for (int t = 0; t < samples; ++t) {
        CharacterSample sample;
        sample.theta.resize(d);
        for (int k = 0; k < d; ++k) sample.theta[k] = angle(rng);
        sample.dims = eval_at(sample.theta);
        fam.samples.push_back(std::move(sample));
    }
    // Generic dims: coordinatewise minimum over the random samples.
    fam.generic = fam.samples.size() > 1 ? fam.samples[1].dims : fam.samples[0].dims;
    for (size_t i = 1; i < fam.samples.size(); ++i)
        for (int k = 0; k < 3; ++k) fam.generic[k] = std::min(fam.generic[k], fam.samples[i].dims[k]);
    for (auto& sample : fam.samples)
        sample.jump = sample.dims[0] > fam.generic[0] || sample.dims[1] > fam.generic[1] ||
                      sample.dims[2] > fam.generic[2];
    for (int k = 0; k < 3; ++k) fam.von_neumann[k] = Rational(fam.generic[k]);
    return fam;
}

CohomologyReport skyscraper_summand(const SkyscraperDatum& s, const CoveringDatum& c) {
    (void)c; // ell^2(Gamma) has Gamma-dimension 1 for every Gamma
    long total = 0;
    for (const auto& point : s.points) {
        if (point.dim < 0) throw InputError("negative skyscraper dimension at " + point.label);
        if (!point.hodge_tags.empty() && static_cast<int>(point.hodge_tags.size()) != point.dim)
            throw InputError("bigrading tags at " + point.label + " do not match the dimension");
        total += point.dim;
    }
    return make_report(Rational(total), Rational(0), Rational(0), Normalization::vonNeumann,
                       StalkModel::pullbackOfExtension);
}

#define L2C_INSTANTIATE(K)                                                                                   \
    template struct LocalSystem<K>;                                                                          \
    template void validate_local_system(const LocalSystem<K>&, const NumericConfig&);                        \
    template int stalk_dim(const Matrix<K>&, const NumericConfig&);                                          \
    template CohomologyReport global_h(const LocalSystem<K>&, const NumericConfig&);                         \
    template int parabolic_h1(const LocalSystem<K>&, const NumericConfig&);                                  \
    template LocalSystem<K> induced_cover_system(const LocalSystem<K>&, const CoveringDatum&,                \
                                                 const NumericConfig&);                                      \
    template CoverAnalysis analyze_cover(const LocalSystem<K>&, const CoveringDatum&, const NumericConfig&); \
    template CohomologyReport l2_cohomology_finite(const LocalSystem<K>&, const CoveringDatum&, StalkModel,  \
                                                   const NumericConfig&);                                    \
    template RiemannHurwitzRecord riemann_hurwitz_check(const LocalSystem<K>&, const CoveringDatum&,         \
                                                        const NumericConfig&);                               \
    template CharacterFamily character_family(const LocalSystem<K>&, const CoveringDatum&, int,              \
                                              std::uint64_t, const NumericConfig&);

L2C_INSTANTIATE(GaussianRational)
L2C_INSTANTIATE(Complex)
#undef L2C_INSTANTIATE

} // namespace l2c
