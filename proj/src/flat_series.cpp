#include "l2curve/flat_series.hpp"

#include <algorithm>

namespace l2c {

void FlatSection::combine() {
    std::sort(terms.begin(), terms.end(), [](const FlatTerm& x, const FlatTerm& y) {
        if (x.comp != y.comp) return x.comp < y.comp;
        if (x.zpow != y.zpow) return x.zpow < y.zpow;
        if (x.logpow != y.logpow) return x.logpow < y.logpow;
        return x.mupow < y.mupow;
    });
    std::vector<FlatTerm> out;
    for (const auto& t : terms) {
        if (!out.empty() && out.back().comp == t.comp && out.back().zpow == t.zpow &&
            out.back().logpow == t.logpow && out.back().mupow == t.mupow)
            out.back().c += t.c;
        else
            out.push_back(t);
    }
    std::erase_if(out, [](const FlatTerm& t) { return t.c.is_zero(); });
    terms = std::move(out);
}

bool FlatSection::is_zero() const {
    for (const auto& t : terms)
        if (!t.c.is_zero()) return false;
    return true;
}

FlatSection FlatSection::operator+(const FlatSection& o) const {
    if (dim != o.dim) throw InternalError("flat section dimension mismatch");
    FlatSection s = *this;
    s.terms.insert(s.terms.end(), o.terms.begin(), o.terms.end());
    s.combine();
    return s;
}

FlatSection FlatSection::operator-(const FlatSection& o) const {
    return *this + o.scaled(GaussianRational(-1));
}

FlatSection FlatSection::scaled(const GaussianRational& f) const {
    FlatSection s = *this;
    for (auto& t : s.terms) t.c *= f;
    return s;
}

FlatSection FlatSection::mu_shifted(int dq) const {
    FlatSection s = *this;
    for (auto& t : s.terms) t.mupow += dq;
    return s;
}

FlatSection apply_matrix(const Matrix<GaussianRational>& n_mat, const FlatSection& s) {
    FlatSection out = FlatSection::zero(s.dim);
    for (const auto& t : s.terms)
        for (int j = 0; j < s.dim; ++j) {
            GaussianRational c = n_mat(j, t.comp) * t.c;
            if (!c.is_zero()) out.terms.push_back({t.zpow, t.logpow, t.mupow, j, c});
        }
    out.combine();
    return out;
}

FlatSection nabla_dz(const FlatSection& s) {
    FlatSection out = FlatSection::zero(s.dim);
    for (const auto& t : s.terms) {
        if (t.zpow != 0)
            out.terms.push_back({t.zpow - 1, t.logpow, t.mupow, t.comp, GaussianRational(Rational(t.zpow)) * t.c});
        if (t.logpow > 0)
            out.terms.push_back({t.zpow - 1, t.logpow - 1, t.mupow, t.comp, GaussianRational(Rational(t.logpow)) * t.c});
    }
    out.combine();
    return out;
}

namespace {

int nilpotency_index(const Matrix<GaussianRational>& n_mat) {
    int n = n_mat.rows();
    Matrix<GaussianRational> p = Matrix<GaussianRational>::identity(n);
    for (int j = 0; j <= n; ++j) {
        if (p.is_zero(0)) return j;
        p = p * n_mat;
    }
    throw InputError("operator is not nilpotent");
}

} // namespace

FlatSection deligne_section(const Rational& beta, const Matrix<GaussianRational>& n_mat,
                            const std::vector<GaussianRational>& e) {
    int d = n_mat.rows();
    int nu = nilpotency_index(n_mat);
    FlatSection out = FlatSection::zero(d);
    std::vector<GaussianRational> v = e;
    Rational factorial(1);
    for (int l = 0; l < nu; ++l) {
        if (l > 0) {
            v = n_mat.apply(v);
            factorial *= l;
        }
        GaussianRational inv_fact{Rational(1) / factorial};
        for (int i = 0; i < d; ++i) {
            GaussianRational c = v[i] * inv_fact;
            if (!c.is_zero()) out.terms.push_back({beta, l, l, i, c});
        }
    }
    out.combine();
    return out;
}

FlatSection series_times_section(const std::vector<GaussianRational>& coeffs, int first_power,
                                 const Rational& shift, const Rational& beta,
                                 const Matrix<GaussianRational>& n_mat, const std::vector<GaussianRational>& e) {
    FlatSection xi = deligne_section(beta, n_mat, e);
    FlatSection out = FlatSection::zero(n_mat.rows());
    for (size_t m = 0; m < coeffs.size(); ++m) {
        if (coeffs[m].is_zero()) continue;
        Rational power = Rational(first_power + static_cast<long>(m)) + shift;
        for (const auto& t : xi.terms)
            out.terms.push_back({t.zpow + power, t.logpow, t.mupow, t.comp, t.c * coeffs[m]});
    }
    out.combine();
    return out;
}

FlatSection nabla_primitive_series(const std::vector<GaussianRational>& coeffs, const Rational& beta,
                                   const Matrix<GaussianRational>& n_mat,
                                   const std::vector<GaussianRational>& e, const NumericConfig& cfg) {
    (void)cfg;
    if (!(beta > -1 && beta <= 0)) throw InputError("series exponent beta outside (-1, 0]");
    int d = n_mat.rows();
    int nu = nilpotency_index(n_mat);
    FlatSection out = FlatSection::zero(d);
    // Powers N^j e, j = 0..nu-1.
    std::vector<std::vector<GaussianRational>> njs = {e};
    for (int j = 1; j < nu; ++j) njs.push_back(n_mat.apply(njs.back()));
    for (int j = 0; j < nu; ++j) {
        FlatSection xi_j = deligne_section(Rational(0), n_mat, njs[j]); // exp(mu N ln z) N^j e
        GaussianRational sign{Rational(j % 2 == 0 ? 1 : -1)};
        for (size_t m = 0; m < coeffs.size(); ++m) {
            if (coeffs[m].is_zero()) continue;
            Rational base = beta + Rational(static_cast<long>(m) + 1);
            // (beta+m+1)^{-(j+1)}: the coefficients satisfy the two-term
            // cancellation c_j (beta+m+1) + c_{j-1} = 0 under nabla.
            GaussianRational factor{Rational(1)};
            for (int rep = 0; rep < j + 1; ++rep) factor /= GaussianRational{base};
            GaussianRational coeff = sign * coeffs[m] * factor;
            Rational power = beta + Rational(static_cast<long>(m) + 1);
            for (const auto& t : xi_j.terms)
                out.terms.push_back({t.zpow + power, t.logpow, t.mupow + j, t.comp, t.c * coeff});
        }
    }
    out.combine();
    return out;
}

ResidueReduction residue_reduction(const GaussianRational& a_minus1, const Matrix<GaussianRational>& n_mat,
                                   const std::vector<GaussianRational>& e, const NumericConfig& cfg) {
    int d = n_mat.rows();
    WeightFiltration<GaussianRational> wf = weight_filtration(n_mat, cfg);
    ResidueReduction out;
    out.e_tilde.assign(d, GaussianRational{});
    // Solve N e_tilde = e, inside W_0 when the target lies in W_{-2} (where
    // N: W_0 -> W_{-2} is onto); otherwise any chain preimage does.
    if (in_span(wf.w_basis(-2, d), e, cfg.tau)) {
        Matrix<GaussianRational> w0 = wf.w_basis(0, d);
        auto y = solve_linear(n_mat * w0, e, cfg.tau);
        if (!y)
            throw InputError("residue target not in the image of N restricted to W_0 (inconsistent local type)");
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < w0.cols(); ++j) out.e_tilde[i] += w0(i, j) * (*y)[j];
    } else {
        auto y = solve_linear(n_mat, e, cfg.tau);
        if (!y) throw InputError("residue target is not in the image of the nilpotent operator");
        out.e_tilde = *y;
    }
    out.primitive_term = deligne_section(Rational(0), n_mat, out.e_tilde).mu_shifted(-1).scaled(a_minus1);
    return out;
}

} // namespace l2c
