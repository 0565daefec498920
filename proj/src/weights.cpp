#include "l2curve/weights.hpp"

#include <algorithm>

namespace l2c {

int LocalPart::dim() const {
    int d = 0;
    for (int b : blocks) d += b;
    return d;
}

const LocalPart* LocalType::unipotent_part() const {
    for (const auto& p : parts)
        if (p.alpha.is_zero()) return &p;
    return nullptr;
}

int LocalType::unipotent_dim() const {
    const LocalPart* p = unipotent_part();
    return p ? p->dim() : 0;
}

LocalType make_local_type(int n, std::vector<LocalPart> parts) {
    LocalType t;
    t.n = n;
    t.parts = std::move(parts);
    int total = 0;
    for (auto& p : t.parts) {
        std::sort(p.blocks.begin(), p.blocks.end(), std::greater<>());
        total += p.dim();
    }
    if (total != n) throw InputError("local type block sizes do not sum to the ambient dimension");
    std::sort(t.parts.begin(), t.parts.end(), [](const LocalPart& a, const LocalPart& b) { return a.alpha < b.alpha; });
    for (size_t i = 1; i < t.parts.size(); ++i)
        if (t.parts[i].alpha == t.parts[i - 1].alpha) throw InputError("duplicate rotation number in local type");
    return t;
}

template <class K>
Matrix<K> restrict_to_invariant(const Matrix<K>& t, const Matrix<K>& basis, double tau) {
    Matrix<K> image = t * basis;
    Matrix<K> coords(basis.cols(), basis.cols());
    for (int c = 0; c < basis.cols(); ++c) {
        std::vector<K> col(image.rows());
        for (int i = 0; i < image.rows(); ++i) col[i] = image(i, c);
        auto x = solve_linear(basis, col, tau);
        if (!x) throw InternalError("subspace is not invariant under the operator");
        for (int i = 0; i < basis.cols(); ++i) coords(i, c) = (*x)[i];
    }
    return coords;
}

namespace {

std::vector<int> blocks_from_kernel_dims(const std::vector<int>& dims) {
    // dims[j] = dim ker N^j (dims[0] = 0); block count of size >= j is
    // dims[j] - dims[j-1].
    std::vector<int> blocks;
    int top = static_cast<int>(dims.size()) - 1;
    for (int j = 1; j <= top; ++j) {
        int geq_j = dims[j] - dims[j - 1];
        int geq_j1 = j + 1 <= top ? dims[j + 1] - dims[j] : 0;
        for (int c = 0; c < geq_j - geq_j1; ++c) blocks.push_back(j);
    }
    std::sort(blocks.begin(), blocks.end(), std::greater<>());
    return blocks;
}

template <class K>
std::vector<int> nilpotent_kernel_dims(const Matrix<K>& n_mat, double tau) {
    int n = n_mat.rows();
    std::vector<int> dims = {0};
    Matrix<K> p = Matrix<K>::identity(n);
    for (int j = 1; j <= n; ++j) {
        p = p * n_mat;
        dims.push_back(n - rank(p, tau));
        if (dims.back() == n) break;
    }
    if (dims.back() != n) throw InputError("operator is not nilpotent");
    return dims;
}

} // namespace

template <class K> LocalType local_type(const Matrix<K>& t, const NumericConfig& cfg) {
    auto parts = eig_unit_circle(t, cfg);
    std::vector<LocalPart> out;
    for (const auto& part : parts) {
        Matrix<K> x = restrict_to_invariant(t, part.basis, cfg.tau);
        int orbit = static_cast<int>(part.alphas.size());
        Matrix<K> n_mat;
        if constexpr (FieldTraits<K>::exact) {
            Matrix<K> xs = semisimple_part(x);
            n_mat = nilpotent_log(inverse(xs) * x, cfg.tau);
        } else {
            // Singleton eigenvalue lambda = e^{2 pi i alpha}.
            double theta = 2 * M_PI * part.alphas.front().to_double();
            K lambda_inv = std::polar(1.0, -theta);
            n_mat = nilpotent_log(lambda_inv * x, cfg.tau);
        }
        std::vector<int> dims = nilpotent_kernel_dims(n_mat, cfg.tau);
        if (orbit > 1) {
            for (int& d : dims) {
                if (d % orbit != 0) throw InternalError("orbit kernel dimensions not divisible by orbit size");
                d /= orbit;
            }
        }
        std::vector<int> blocks = blocks_from_kernel_dims(dims);
        for (const RotationNumber& alpha : part.alphas) out.push_back({alpha, blocks});
    }
    return make_local_type(t.rows(), std::move(out));
}

LocalType pullback_local_type(const LocalType& t, int n_p) {
    if (n_p < 1) throw InputError("pullback with n_p < 1");
    std::map<Rational, std::vector<int>> merged;
    for (const auto& part : t.parts) {
        RotationNumber beta = RotationNumber::reduce(part.alpha.value * n_p);
        auto& blocks = merged[beta.value];
        blocks.insert(blocks.end(), part.blocks.begin(), part.blocks.end());
    }
    std::vector<LocalPart> parts;
    for (auto& [beta, blocks] : merged) parts.push_back({RotationNumber(beta), std::move(blocks)});
    return make_local_type(t.n, std::move(parts));
}

std::vector<GrowthExponent> growth_exponents(const LocalType& t) {
    std::vector<GrowthExponent> out;
    for (const auto& part : t.parts) {
        std::map<int, int> mult;
        for (int m : part.blocks)
            for (int k = m - 1; k >= 1 - m; k -= 2) ++mult[k];
        for (auto it = mult.rbegin(); it != mult.rend(); ++it)
            out.push_back({part.alpha, it->first, it->second});
    }
    return out;
}

std::map<int, int> graded_weight_dims(const std::vector<int>& blocks) {
    std::map<int, int> g;
    for (int m : blocks)
        for (int k = m - 1; k >= 1 - m; k -= 2) ++g[k];
    return g;
}

int weight_dim_leq(const std::vector<int>& blocks, int k) {
    int d = 0;
    for (int m : blocks)
        for (int w = m - 1; w >= 1 - m; w -= 2)
            if (w <= k) ++d;
    return d;
}

int deligne_fiber_dim(const LocalType& t, const Rational&) { return t.n; }

int m_lattice_fiber_dim(const LocalType& t, int k, const Rational& beta) {
    RotationNumber rep = RotationNumber::reduce(beta);
    const LocalPart* part = nullptr;
    for (const auto& p : t.parts)
        if (p.alpha == rep) part = &p;
    if (!part) return t.n; // graded piece empty: the weight cut is vacuous
    return (t.n - part->dim()) + weight_dim_leq(part->blocks, k);
}

LatticeDims lattice_dims(const LocalType& t) {
    LatticeDims d;
    d.n = t.n;
    d.d0 = m_lattice_fiber_dim(t, 0, Rational(0));
    d.d1 = m_lattice_fiber_dim(t, -2, Rational(-1));
    return d;
}

int local_h0(const LocalType& t) {
    const LocalPart* u = t.unipotent_part();
    return u ? weight_dim_leq(u->blocks, 0) : 0;
}

// ---------------------------------------------------------------------------
// Weight filtration of a nilpotent operator via Jordan chains.

namespace {

// Columns of `candidates` not in span(base), appended greedily.
template <class K>
std::vector<std::vector<K>> complete_basis(Matrix<K> base, const Matrix<K>& candidates, int needed, double tau) {
    std::vector<std::vector<K>> chosen;
    for (int c = 0; c < candidates.cols() && static_cast<int>(chosen.size()) < needed; ++c) {
        std::vector<K> v(candidates.rows());
        for (int i = 0; i < candidates.rows(); ++i) v[i] = candidates(i, c);
        if (in_span(base, v, tau)) continue;
        Matrix<K> col(candidates.rows(), 1);
        for (int i = 0; i < candidates.rows(); ++i) col(i, 0) = v[i];
        base = base.hstack(col);
        chosen.push_back(std::move(v));
    }
    return chosen;
}

} // namespace

template <class K> WeightFiltration<K> weight_filtration(const Matrix<K>& n_mat, const NumericConfig& cfg) {
    int n = n_mat.rows();
    double tau = cfg.tau;
    std::vector<int> dims = nilpotent_kernel_dims(n_mat, tau);
    int nu = static_cast<int>(dims.size()) - 1; // nilpotency index

    // Kernel bases of N^j.
    std::vector<Matrix<K>> kernels = {Matrix<K>(n, 0)};
    Matrix<K> p = Matrix<K>::identity(n);
    for (int j = 1; j <= nu; ++j) {
        p = p * n_mat;
        kernels.push_back(kernel_basis(p, tau));
    }

    struct Chain {
        int height;
        std::vector<std::vector<K>> vectors; // top, N top, N^2 top, ...
    };
    std::vector<Chain> chains;
    for (int h = nu; h >= 1; --h) {
        int geq_h = dims[h] - dims[h - 1];
        int geq_h1 = h + 1 <= nu ? dims[h + 1] - dims[h] : 0;
        int fresh = geq_h - geq_h1;
        // Existing chain vectors living at height h (in ker N^h, not lower).
        Matrix<K> occupied = kernels[h - 1];
        for (const Chain& ch : chains) {
            const std::vector<K>& v = ch.vectors[ch.height - h];
            Matrix<K> col(n, 1);
            for (int i = 0; i < n; ++i) col(i, 0) = v[i];
            occupied = occupied.hstack(col);
        }
        auto tops = complete_basis(occupied, kernels[h], fresh, tau);
        if (static_cast<int>(tops.size()) != fresh) throw InternalError("Jordan chain extraction failed");
        for (auto& top : tops) {
            Chain ch{h, {top}};
            for (int l = 1; l < h; ++l) ch.vectors.push_back(n_mat.apply(ch.vectors.back()));
            chains.push_back(std::move(ch));
        }
    }

    WeightFiltration<K> wf;
    wf.k_min = nu > 0 ? 1 - nu : 0;
    wf.k_max = nu > 0 ? nu - 1 : 0;
    wf.bases.clear();
    wf.graded.assign(wf.k_max - wf.k_min + 1, 0);
    for (int k = wf.k_min; k <= wf.k_max; ++k) {
        Matrix<K> span(n, 0);
        for (const Chain& ch : chains) {
            for (int l = 0; l < ch.height; ++l) {
                int weight = ch.height - 1 - 2 * l;
                if (weight > k) continue;
                Matrix<K> col(n, 1);
                for (int i = 0; i < n; ++i) col(i, 0) = ch.vectors[l][i];
                span = span.hstack(col);
            }
        }
        wf.bases.push_back(column_space_basis(span, tau));
    }
    for (int k = wf.k_min; k <= wf.k_max; ++k)
        wf.graded[k - wf.k_min] = wf.dim_w(k) - (k > wf.k_min ? wf.dim_w(k - 1) : 0);
    return wf;
}

template <class K>
bool verify_weight_axioms(const Matrix<K>& n_mat, const WeightFiltration<K>& wf, double tau) {
    int n = n_mat.rows();
    // Increasing, exhaustive.
    if (wf.dim_w(wf.k_max) != n) return false;
    for (int k = wf.k_min + 1; k <= wf.k_max; ++k) {
        Matrix<K> lower = wf.w_basis(k - 1, n);
        Matrix<K> upper = wf.w_basis(k, n);
        if (rank(upper.hstack(lower), tau) != upper.cols()) return false;
    }
    // N W_k subset W_{k-2}.
    for (int k = wf.k_min; k <= wf.k_max; ++k) {
        Matrix<K> image = n_mat * wf.w_basis(k, n);
        Matrix<K> target = wf.w_basis(k - 2, n);
        for (int c = 0; c < image.cols(); ++c) {
            std::vector<K> v(n);
            for (int i = 0; i < n; ++i) v[i] = image(i, c);
            if (!in_span(target, v, tau)) return false;
        }
    }
    // N^k : Gr_k -> Gr_{-k} bijective for k >= 0.
    for (int k = 0; k <= wf.k_max; ++k) {
        int dim_grk = wf.dim_w(k) - wf.dim_w(k - 1);
        int dim_grmk = wf.dim_w(-k) - wf.dim_w(-k - 1);
        if (dim_grk != dim_grmk) return false;
        if (dim_grk == 0) continue;
        // Representatives of Gr_k: columns of W_k independent mod W_{k-1}.
        Matrix<K> reps(n, 0);
        Matrix<K> acc = wf.w_basis(k - 1, n);
        Matrix<K> wk = wf.w_basis(k, n);
        for (int c = 0; c < wk.cols() && reps.cols() < dim_grk; ++c) {
            std::vector<K> v(n);
            for (int i = 0; i < n; ++i) v[i] = wk(i, c);
            if (in_span(acc, v, tau)) continue;
            Matrix<K> col(n, 1);
            for (int i = 0; i < n; ++i) col(i, 0) = v[i];
            acc = acc.hstack(col);
            reps = reps.hstack(col);
        }
        Matrix<K> image = reps;
        for (int j = 0; j < k; ++j) image = n_mat * image;
        // Images must lie in W_{-k} and be independent mod W_{-k-1}.
        Matrix<K> wmk = wf.w_basis(-k, n);
        for (int c = 0; c < image.cols(); ++c) {
            std::vector<K> v(n);
            for (int i = 0; i < n; ++i) v[i] = image(i, c);
            if (!in_span(wmk, v, tau)) return false;
        }
        Matrix<K> wmk1 = wf.w_basis(-k - 1, n);
        if (rank(wmk1.hstack(image), tau) - wmk1.cols() != dim_grk) return false;
    }
    return true;
}

template LocalType local_type(const Matrix<GaussianRational>&, const NumericConfig&);
template LocalType local_type(const Matrix<Complex>&, const NumericConfig&);
template WeightFiltration<GaussianRational> weight_filtration(const Matrix<GaussianRational>&, const NumericConfig&);
template WeightFiltration<Complex> weight_filtration(const Matrix<Complex>&, const NumericConfig&);
template bool verify_weight_axioms(const Matrix<GaussianRational>&, const WeightFiltration<GaussianRational>&, double);
template bool verify_weight_axioms(const Matrix<Complex>&, const WeightFiltration<Complex>&, double);
template Matrix<GaussianRational> restrict_to_invariant(const Matrix<GaussianRational>&, const Matrix<GaussianRational>&, double);
template Matrix<Complex> restrict_to_invariant(const Matrix<Complex>&, const Matrix<Complex>&, double);

} // namespace l2c
