#include "l2curve/gamma.hpp"

namespace l2c {

template <class K> Matrix<K> ambient_action(const FiniteGroup& g, GroupElement x, int multiplicity) {
    int order = g.order();
    std::vector<int> p = g.left_translation(x);
    Matrix<K> m(multiplicity * order, multiplicity * order);
    for (int b = 0; b < multiplicity; ++b)
        for (int col = 0; col < order; ++col) m(b * order + p[col], b * order + col) = FieldTraits<K>::one();
    return m;
}

template <class K> Matrix<K> right_multiplication(const FiniteGroup& g, const std::vector<K>& coeff) {
    int order = g.order();
    if (static_cast<int>(coeff.size()) != order) throw InputError("coefficient vector size mismatch");
    Matrix<K> m(order, order);
    for (GroupElement h = 0; h < order; ++h) {
        if (FieldTraits<K>::exact && coeff[h] == FieldTraits<K>::zero()) continue;
        for (GroupElement gamma = 0; gamma < order; ++gamma) m(g.mul(gamma, h), gamma) += coeff[h];
    }
    return m;
}

template <class K>
Matrix<K> random_equivariant_map(std::mt19937_64& rng, const FiniteGroup& g, int rows_mult, int cols_mult,
                                 int bound) {
    std::uniform_int_distribution<int> pick(-bound, bound);
    int order = g.order();
    Matrix<K> m(rows_mult * order, cols_mult * order);
    for (int br = 0; br < rows_mult; ++br)
        for (int bc = 0; bc < cols_mult; ++bc) {
            std::vector<K> coeff(order, FieldTraits<K>::zero());
            // Sparse group-algebra element.
            for (int t = 0; t < 2; ++t) coeff[rng() % order] = FieldTraits<K>::from_int(pick(rng));
            Matrix<K> block = right_multiplication<K>(g, coeff);
            for (int i = 0; i < order; ++i)
                for (int j = 0; j < order; ++j) m(br * order + i, bc * order + j) = block(i, j);
        }
    return m;
}

namespace {

template <class K>
void check_invariant_span(const FiniteGroup& g, int multiplicity, const Matrix<K>& basis, double tau) {
    for (GroupElement x = 0; x < g.order(); ++x) {
        Matrix<K> act = ambient_action<K>(g, x, multiplicity);
        Matrix<K> image = act * basis;
        for (int c = 0; c < image.cols(); ++c) {
            std::vector<K> v(image.rows());
            for (int i = 0; i < image.rows(); ++i) v[i] = image(i, c);
            if (!in_span(basis, v, tau))
                throw InputError("module span is not Gamma-invariant");
        }
    }
}

} // namespace

template <class K>
GammaModule<K> gamma_module_from_span(std::shared_ptr<const FiniteGroup> group, int multiplicity,
                                      const Matrix<K>& span, const NumericConfig& cfg) {
    if (span.rows() != multiplicity * group->order()) throw InputError("span has wrong ambient dimension");
    GammaModule<K> m;
    m.group = std::move(group);
    m.multiplicity = multiplicity;
    m.basis = column_space_basis(span, cfg.tau);
    check_invariant_span(*m.group, multiplicity, m.basis, cfg.tau);
    return m;
}

template <class K> GammaModule<K> gamma_module_full(std::shared_ptr<const FiniteGroup> group, int multiplicity) {
    GammaModule<K> m;
    m.group = std::move(group);
    m.multiplicity = multiplicity;
    m.basis = Matrix<K>::identity(multiplicity * m.group->order());
    return m;
}

template <class K>
GammaModule<K> gamma_module_from_projection(std::shared_ptr<const FiniteGroup> group, int multiplicity,
                                            const Matrix<K>& projection, const NumericConfig& cfg) {
    int ambient = multiplicity * group->order();
    if (projection.rows() != ambient || projection.cols() != ambient)
        throw InputError("projection has wrong ambient dimension");
    if (!(projection * projection - projection).is_zero(cfg.tau))
        throw InputError("projection is not idempotent");
    for (GroupElement x = 0; x < group->order(); ++x) {
        Matrix<K> act = ambient_action<K>(*group, x, multiplicity);
        if (!(act * projection - projection * act).is_zero(cfg.tau))
            throw InputError("projection does not commute with the Gamma-action");
    }
    GammaModule<K> m;
    m.group = std::move(group);
    m.multiplicity = multiplicity;
    m.basis = column_space_basis(projection, cfg.tau);
    return m;
}

template <class K> Rational vn_dim(const GammaModule<K>& m) {
    return Rational(m.dim()) / Rational(m.group->order());
}

template <class K> void validate_gamma_complex(const GammaComplex<K>& c, const NumericConfig& cfg) {
    if (c.modules.empty()) return;
    if (c.diffs.size() + 1 != c.modules.size()) throw InputError("complex differential count mismatch");
    const FiniteGroup& g = *c.modules[0].group;
    for (size_t i = 0; i < c.diffs.size(); ++i) {
        const Matrix<K>& d = c.diffs[i];
        if (d.rows() != c.modules[i + 1].ambient_dim() || d.cols() != c.modules[i].ambient_dim())
            throw InputError("differential shape mismatch at degree " + std::to_string(c.degree_of(static_cast<int>(i))));
        for (GroupElement x = 0; x < g.order(); ++x) {
            Matrix<K> a_src = ambient_action<K>(g, x, c.modules[i].multiplicity);
            Matrix<K> a_dst = ambient_action<K>(g, x, c.modules[i + 1].multiplicity);
            if (!(d * a_src - a_dst * d).is_zero(cfg.tau))
                throw InputError("differential is not Gamma-equivariant");
        }
        // d maps the module into the next module.
        Matrix<K> image = d * c.modules[i].basis;
        for (int col = 0; col < image.cols(); ++col) {
            std::vector<K> v(image.rows());
            for (int r = 0; r < image.rows(); ++r) v[r] = image(r, col);
            if (!in_span(c.modules[i + 1].basis, v, cfg.tau))
                throw InputError("differential does not map module into module");
        }
        if (i + 1 < c.diffs.size()) {
            if (!((c.diffs[i + 1] * d) * c.modules[i].basis).is_zero(cfg.tau))
                throw InputError("d^2 != 0");
        }
    }
}

template <class K> std::vector<Rational> complex_cohomology_dims(const GammaComplex<K>& c, const NumericConfig& cfg) {
    validate_gamma_complex(c, cfg);
    size_t len = c.modules.size();
    std::vector<long> kernel_dim(len), incoming(len, 0);
    for (size_t i = 0; i < len; ++i) {
        if (i < c.diffs.size()) {
            Matrix<K> restricted = c.diffs[i] * c.modules[i].basis;
            long rk = rank(restricted, cfg.tau);
            kernel_dim[i] = c.modules[i].dim() - rk;
            incoming[i + 1] = rk;
        } else {
            kernel_dim[i] = c.modules[i].dim();
        }
    }
    std::vector<Rational> out;
    Rational order(c.modules.empty() ? 1 : c.modules[0].group->order());
    for (size_t i = 0; i < len; ++i) {
        long h = kernel_dim[i] - incoming[i];
        if (h < 0) throw InternalError("negative cohomology dimension");
        out.push_back(Rational(h) / order);
    }
    return out;
}

template <class K> Rational gamma_euler_characteristic(const GammaComplex<K>& c) {
    Rational chi(0);
    for (size_t i = 0; i < c.modules.size(); ++i) {
        Rational term = vn_dim(c.modules[i]);
        if ((c.degree_of(static_cast<int>(i)) % 2 + 2) % 2 == 1) term = -term;
        chi += term;
    }
    return chi;
}

template <class K>
void validate_chain_map(const GammaComplex<K>& c0, const GammaComplex<K>& c1, const GammaChainMap<K>& f,
                        const NumericConfig& cfg) {
    if (c0.start_degree != c1.start_degree || c0.modules.size() != c1.modules.size())
        throw InputError("chain map requires aligned complexes");
    if (f.maps.size() != c0.modules.size()) throw InputError("chain map degree count mismatch");
    if (c0.modules.empty()) return;
    const FiniteGroup& g = *c0.modules[0].group;
    for (size_t i = 0; i < f.maps.size(); ++i) {
        const Matrix<K>& fi = f.maps[i];
        if (fi.rows() != c1.modules[i].ambient_dim() || fi.cols() != c0.modules[i].ambient_dim())
            throw InputError("chain map shape mismatch");
        for (GroupElement x = 0; x < g.order(); ++x) {
            Matrix<K> a_src = ambient_action<K>(g, x, c0.modules[i].multiplicity);
            Matrix<K> a_dst = ambient_action<K>(g, x, c1.modules[i].multiplicity);
            if (!(fi * a_src - a_dst * fi).is_zero(cfg.tau)) throw InputError("chain map is not equivariant");
        }
        Matrix<K> image = fi * c0.modules[i].basis;
        for (int col = 0; col < image.cols(); ++col) {
            std::vector<K> v(image.rows());
            for (int r = 0; r < image.rows(); ++r) v[r] = image(r, col);
            if (!in_span(c1.modules[i].basis, v, cfg.tau)) throw InputError("chain map does not respect modules");
        }
        if (i + 1 < f.maps.size()) {
            if (!((f.maps[i + 1] * c0.diffs[i] - c1.diffs[i] * fi) * c0.modules[i].basis).is_zero(cfg.tau))
                throw InputError("not a chain map: squares do not commute");
        }
    }
}

template <class K>
GammaComplex<K> cone(const GammaComplex<K>& c0, const GammaComplex<K>& c1, const GammaChainMap<K>& f,
                     const NumericConfig& cfg) {
    validate_gamma_complex(c0, cfg);
    validate_gamma_complex(c1, cfg);
    validate_chain_map(c0, c1, f, cfg);
    if (c0.modules.empty()) return GammaComplex<K>{};
    auto group = c0.modules[0].group;
    int len = static_cast<int>(c0.modules.size());

    GammaComplex<K> out;
    out.start_degree = c0.start_degree - 1;
    // cone^n = C0^{n+1} (+) C1^n for n = start-1 .. start+len-1.
    for (int n = 0; n <= len; ++n) {
        const GammaModule<K>* left = n < len ? &c0.modules[n] : nullptr;       // C0^{n+1} at cone index n
        const GammaModule<K>* right = n >= 1 ? &c1.modules[n - 1] : nullptr;   // C1^n
        GammaModule<K> m;
        m.group = group;
        m.multiplicity = (left ? left->multiplicity : 0) + (right ? right->multiplicity : 0);
        int ldim = left ? left->ambient_dim() : 0;
        int rdim = right ? right->ambient_dim() : 0;
        Matrix<K> basis(ldim + rdim, (left ? left->dim() : 0) + (right ? right->dim() : 0));
        if (left)
            for (int i = 0; i < ldim; ++i)
                for (int j = 0; j < left->dim(); ++j) basis(i, j) = left->basis(i, j);
        if (right)
            for (int i = 0; i < rdim; ++i)
                for (int j = 0; j < right->dim(); ++j) basis(ldim + i, (left ? left->dim() : 0) + j) = right->basis(i, j);
        m.basis = basis;
        out.modules.push_back(std::move(m));
    }
    for (int n = 0; n < len; ++n) {
        // d_cone : cone^n -> cone^{n+1}, block [[-d0, 0], [f, d1]].
        int src_l = n < len ? c0.modules[n].ambient_dim() : 0;
        int src_r = n >= 1 ? c1.modules[n - 1].ambient_dim() : 0;
        int dst_l = n + 1 < len ? c0.modules[n + 1].ambient_dim() : 0;
        int dst_r = c1.modules[n].ambient_dim();
        Matrix<K> d(dst_l + dst_r, src_l + src_r);
        if (n + 1 < len) {
            const Matrix<K>& d0 = c0.diffs[n];
            for (int i = 0; i < dst_l; ++i)
                for (int j = 0; j < src_l; ++j) d(i, j) = -d0(i, j);
        }
        const Matrix<K>& fn = f.maps[n];
        for (int i = 0; i < dst_r; ++i)
            for (int j = 0; j < src_l; ++j) d(dst_l + i, j) = fn(i, j);
        if (n >= 1) {
            const Matrix<K>& d1 = c1.diffs[n - 1];
            for (int i = 0; i < dst_r; ++i)
                for (int j = 0; j < src_r; ++j) d(dst_l + i, src_l + j) = d1(i, j);
        }
        out.diffs.push_back(std::move(d));
    }
    validate_gamma_complex(out, cfg);
    return out;
}

TorsionReport torsion_report(const CharacterFamily& family) {
    TorsionReport rep;
    rep.von_neumann = family.von_neumann;
    for (const auto& sample : family.samples)
        if (sample.jump) {
            rep.torsion_present = true;
            rep.jump_locus.push_back(sample);
        }
    return rep;
}

#define L2C_INSTANTIATE(K)                                                                                  \
    template struct GammaModule<K>;                                                                         \
    template Matrix<K> ambient_action<K>(const FiniteGroup&, GroupElement, int);                            \
    template Matrix<K> right_multiplication<K>(const FiniteGroup&, const std::vector<K>&);                  \
    template Matrix<K> random_equivariant_map<K>(std::mt19937_64&, const FiniteGroup&, int, int, int);      \
    template GammaModule<K> gamma_module_from_span(std::shared_ptr<const FiniteGroup>, int,                 \
                                                   const Matrix<K>&, const NumericConfig&);                 \
    template GammaModule<K> gamma_module_full<K>(std::shared_ptr<const FiniteGroup>, int);                  \
    template GammaModule<K> gamma_module_from_projection(std::shared_ptr<const FiniteGroup>, int,           \
                                                         const Matrix<K>&, const NumericConfig&);           \
    template Rational vn_dim(const GammaModule<K>&);                                                        \
    template void validate_gamma_complex(const GammaComplex<K>&, const NumericConfig&);                     \
    template std::vector<Rational> complex_cohomology_dims(const GammaComplex<K>&, const NumericConfig&);   \
    template Rational gamma_euler_characteristic(const GammaComplex<K>&);                                   \
    template void validate_chain_map(const GammaComplex<K>&, const GammaComplex<K>&,                        \
                                     const GammaChainMap<K>&, const NumericConfig&);                        \
    template GammaComplex<K> cone(const GammaComplex<K>&, const GammaComplex<K>&, const GammaChainMap<K>&,  \
                                  const NumericConfig&);

L2C_INSTANTIATE(GaussianRational)
L2C_INSTANTIATE(Complex)
#undef L2C_INSTANTIATE

} // namespace l2c
