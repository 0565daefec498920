#include "l2curve/disk.hpp"

#include <cmath>

namespace l2c {

namespace {
const Complex kI{0.0, 1.0};
}

ModeChannels& ModeForm::mode(int n) {
    for (auto& m : modes)
        if (m.n == n) return m;
    modes.push_back(ModeChannels{n, {}, {}, {}, {}});
    return modes.back();
}

const ModeChannels* ModeForm::find_mode(int n) const {
    for (const auto& m : modes)
        if (m.n == n) return &m;
    return nullptr;
}

bool ModeForm::is_zero(double eps) const {
    for (const auto& m : modes)
        if (!(m.c0.is_zero(eps) && m.c_dr.is_zero(eps) && m.c_dtheta.is_zero(eps) && m.c_area.is_zero(eps)))
            return false;
    return true;
}

ModeForm ModeForm::operator+(const ModeForm& o) const {
    if (degree != o.degree) throw InputError("mode form degree mismatch");
    ModeForm out = *this;
    for (const auto& m : o.modes) {
        ModeChannels& target = out.mode(m.n);
        target.c0 = target.c0 + m.c0;
        target.c_dr = target.c_dr + m.c_dr;
        target.c_dtheta = target.c_dtheta + m.c_dtheta;
        target.c_area = target.c_area + m.c_area;
    }
    return out;
}

ModeForm ModeForm::operator-(const ModeForm& o) const { return *this + o.scaled({-1.0, 0.0}); }

ModeForm ModeForm::scaled(Complex c) const {
    ModeForm out = *this;
    for (auto& m : out.modes) {
        m.c0 = m.c0.scaled(c);
        m.c_dr = m.c_dr.scaled(c);
        m.c_dtheta = m.c_dtheta.scaled(c);
        m.c_area = m.c_area.scaled(c);
    }
    return out;
}

WeightedNorm weighted_norm(const ModeForm& phi, const QuadratureControl& qc) {
    const Rational two_beta = phi.frame.beta * 2;
    const int k = phi.frame.k;
    double sq = 0.0;
    for (const auto& m : phi.modes) {
        struct Piece {
            const RadialFn* f;
            Rational p;
            int q;
            double factor;
        };
        const Piece pieces[] = {
            {&m.c0, two_beta - 1, k - 2, 1.0},
            {&m.c_dr, two_beta + 1, k, 1.0},
            {&m.c_dtheta, two_beta - 1, k, 1.0},
            {&m.c_area, two_beta + 1, k + 2, 1.0},
        };
        for (const auto& piece : pieces) {
            if (piece.f->terms.empty()) continue;
            WeightedIntegral w = weighted_square_integral(*piece.f, piece.p, piece.q, phi.radius, qc);
            if (!w.finite) return {false, 0.0, 0.0};
            sq += 2 * M_PI * piece.factor * w.value;
        }
    }
    return {true, std::sqrt(std::max(0.0, sq)), sq};
}

ModeForm graded_differential(const ModeForm& phi) {
    // D(f dr + g dtheta) = [g' + beta g / r - i (n + beta) f] dr ^ dtheta per
    // mode; for 0-forms D(h) = (h' + beta h / r) dr + i (n + beta) h dtheta.
    ModeForm out;
    out.frame = phi.frame;
    out.radius = phi.radius;
    double beta = static_cast<double>(phi.frame.beta);
    if (phi.degree == 0) {
        out.degree = 1;
        for (const auto& m : phi.modes) {
            ModeChannels& t = out.mode(m.n);
            t.c_dr = m.c0.derivative() + m.c0.shifted(Rational(-1)).scaled(beta);
            t.c_dtheta = m.c0.scaled(kI * (m.n + beta));
        }
    } else if (phi.degree == 1) {
        out.degree = 2;
        for (const auto& m : phi.modes) {
            ModeChannels& t = out.mode(m.n);
            t.c_area = m.c_dtheta.derivative() + m.c_dtheta.shifted(Rational(-1)).scaled(beta) +
                       m.c_dr.scaled(-kI * (m.n + beta));
        }
    } else {
        out.degree = 3; // zero
    }
    return out;
}

namespace {

void check_closed(const ModeForm& eta, const NumericConfig& cfg) {
    ModeForm defect = graded_differential(eta);
    double scale = 0.0;
    for (const auto& m : eta.modes) {
        scale = std::max(scale, m.c_dr.max_coeff());
        scale = std::max(scale, m.c_dtheta.max_coeff());
    }
    if (!defect.is_zero(cfg.tau * std::max(1.0, scale))) throw InputError("mode form is not closed");
}

bool radial_is_constant(const RadialFn& f, double eps) {
    for (const auto& t : f.terms)
        if ((t.a != 0 || t.b != 0) && std::abs(t.c) > eps) return false;
    return true;
}

} // namespace

SolveModeResult solve_mode(const ModeForm& eta, const NumericConfig& cfg, const QuadratureControl& qc,
                           bool allow_critical) {
    if (eta.degree != 1) throw InputError("solve_mode expects a degree-1 form");
    check_closed(eta, cfg);
    double beta = static_cast<double>(eta.frame.beta);
    bool beta_zero = eta.frame.beta == 0;
    int k = eta.frame.k;

    SolveModeResult res;
    res.primitive.degree = 0;
    res.primitive.frame = eta.frame;
    res.primitive.radius = eta.radius;
    res.residual.degree = 1;
    res.residual.frame = eta.frame;
    res.residual.radius = eta.radius;

    for (const auto& m : eta.modes) {
        if (!(beta_zero && m.n == 0)) {
            // h_n = g_n / (i (n + beta)); closedness kills both channels.
            Complex denom = kI * (m.n + beta);
            res.primitive.mode(m.n).c0 = m.c_dtheta.scaled(1.0 / denom);
            continue;
        }
        // beta = 0, n = 0: g0 is a constant by closedness.
        RadialFn g0 = m.c_dtheta;
        g0.combine();
        if (!g0.is_zero(cfg.tau * std::max(1.0, g0.max_coeff()))) {
            if (!radial_is_constant(g0, cfg.tau * std::max(1.0, g0.max_coeff())))
                throw InputError("dtheta zero-mode is not constant; form is not closed");
            Complex g0c = g0.eval(eta.radius / 2);
            if (k >= -1)
                throw ObstructionError("obstruction: constant dtheta mode with k >= -1 is not square integrable",
                                       g0c);
            // g0 dtheta = (g0/i) dz/z - (g0/i) dr/r; the dr/r part has the
            // square-integrable primitive (g0/i) L, the dz/z part stays.
            res.primitive.mode(0).c0 = res.primitive.mode(0).c0 + RadialFn::monomial(Rational(0), 1, g0c / kI);
            res.residual.mode(0).c_dr = res.residual.mode(0).c_dr + RadialFn::monomial(Rational(-1), 0, g0c / kI);
            res.residual.mode(0).c_dtheta = res.residual.mode(0).c_dtheta + RadialFn::constant(g0c);
        }
        RadialFn f0 = m.c_dr;
        f0.combine();
        if (f0.is_zero()) continue;
        if (k > 1) {
            res.primitive.mode(0).c0 = res.primitive.mode(0).c0 + f0.primitive_from_zero();
        } else if (k < 1) {
            res.primitive.mode(0).c0 = res.primitive.mode(0).c0 + f0.primitive_to_radius(eta.radius);
        } else if (allow_critical) {
            // k = 1: no uniform bound, but monomial-log integrands still have
            // square-integrable termwise primitives.
            res.primitive.mode(0).c0 = res.primitive.mode(0).c0 + f0.primitive_from_zero();
        } else {
            res.residual.mode(0).c_dr = res.residual.mode(0).c_dr + f0;
        }
    }

    res.input_norm = weighted_norm(eta, qc);
    res.primitive_norm = weighted_norm(res.primitive, qc);
    res.residual_norm = weighted_norm(res.residual, qc);
    if (res.input_norm.finite && res.primitive_norm.finite && res.input_norm.value > 0)
        res.bound_ratio = res.primitive_norm.value / res.input_norm.value;
    return res;
}

SolveModeResult solve_mode_degree2(const ModeForm& eta, const NumericConfig& cfg, const QuadratureControl& qc,
                                   bool allow_critical) {
    if (eta.degree != 2) throw InputError("solve_mode_degree2 expects a degree-2 form");
    (void)cfg; // top-degree forms are closed; no tolerance checks needed
    double beta = static_cast<double>(eta.frame.beta);
    bool beta_zero = eta.frame.beta == 0;
    int k = eta.frame.k;

    SolveModeResult res;
    res.primitive.degree = 1;
    res.primitive.frame = eta.frame;
    res.primitive.radius = eta.radius;
    res.residual.degree = 2;
    res.residual.frame = eta.frame;
    res.residual.radius = eta.radius;

    for (const auto& m : eta.modes) {
        RadialFn h = m.c_area;
        h.combine();
        if (h.is_zero()) continue;
        if (!(beta_zero && m.n == 0)) {
            // D(u dr) = -i(n + beta) u dr ^ dtheta.
            Complex denom = -kI * (m.n + beta);
            res.primitive.mode(m.n).c_dr = h.scaled(1.0 / denom);
            continue;
        }
        // beta = 0, n = 0: seek f dtheta with f' = h0.
        if (k > -1) {
            res.primitive.mode(0).c_dtheta = res.primitive.mode(0).c_dtheta + h.primitive_from_zero();
        } else if (k < -1) {
            res.primitive.mode(0).c_dtheta = res.primitive.mode(0).c_dtheta + h.primitive_to_radius(eta.radius);
        } else if (allow_critical) {
            res.primitive.mode(0).c_dtheta = res.primitive.mode(0).c_dtheta + h.primitive_from_zero();
        } else {
            res.residual.mode(0).c_area = res.residual.mode(0).c_area + h;
        }
    }

    res.input_norm = weighted_norm(eta, qc);
    res.primitive_norm = weighted_norm(res.primitive, qc);
    res.residual_norm = weighted_norm(res.residual, qc);
    if (res.input_norm.finite && res.primitive_norm.finite && res.input_norm.value > 0)
        res.bound_ratio = res.primitive_norm.value / res.input_norm.value;
    return res;
}

DbarResult dbar_mode_solve(Complex coeff, const Rational& a, int n, const FrameWeight& frame, double radius,
                           const NumericConfig& cfg, const QuadratureControl& qc) {
    if (frame.beta == 0 || frame.k == 1)
        throw InputError("excluded weight: dbar estimate requires beta (k-1) != 0");
    // f = c r^a e^{i n theta} = c z^p zbar^q with p = (a+n)/2, q = (a-n)/2.
    Rational q = (a - Rational(n)) / 2;
    DbarResult out;
    out.solution.degree = 0;
    out.solution.frame = frame;
    out.solution.radius = radius;
    if (coeff != Complex(0.0, 0.0)) {
        if (q != -1) {
            double qd = static_cast<double>(q);
            out.solution.mode(n - 1).c0 = RadialFn::monomial(a + 1, 0, coeff / (qd + 1.0));
        } else {
            // f = c z^p / zbar: g = c z^p ln(r^2) = -2 c r^{a+1} L e^{i(n-1)theta}.
            out.solution.mode(n - 1).c0 = RadialFn::monomial(a + 1, 1, -2.0 * coeff);
        }
    }
    // ||f dzbar||^2: |dzbar|^2 = 2 r^2 ln^2 r, measure factor as dr-channel x2.
    RadialFn f = RadialFn::monomial(a, 0, coeff);
    WeightedIntegral in_sq = weighted_square_integral(f, frame.beta * 2 + 1, frame.k, radius, qc);
    WeightedNorm gn = weighted_norm(out.solution, qc);
    if (!in_sq.finite) throw InputError("dbar input has infinite norm");
    if (!gn.finite) throw InternalError("dbar particular solution has infinite norm");
    double in_norm = std::sqrt(std::max(0.0, 2.0 * 2.0 * M_PI * in_sq.value));
    out.bound_ratio = in_norm > 0 ? gn.value / in_norm : 0.0;
    (void)cfg;
    return out;
}

double il_constant(double diameter, double dist_integral) {
    if (!(diameter > 0) || !(dist_integral > 0))
        throw InputError("il_constant needs positive diameter and boundary-distance integral");
    constexpr int n = 2;
    double sigma = 2 * M_PI; // volume of S^{n-1}
    return std::pow(2.0, n) * sigma * std::pow(diameter, n + 2) / dist_integral;
}

GrowthFit growth_fit(const std::vector<std::pair<double, double>>& samples) {
    if (samples.size() < 20) throw InputError("growth_fit needs at least 20 samples");
    for (const auto& [r, v] : samples) {
        if (!(r > 0) || r > 0.01) throw InputError("growth_fit samples must satisfy 0 < r <= 0.01");
        if (!(v > 0)) throw InputError("growth_fit samples must be positive");
    }
    // Normal equations for log v = c + (2 beta) log r + k log |log r|.
    double a[3][3] = {};
    double b[3] = {};
    for (const auto& [r, v] : samples) {
        double x1 = std::log(r), x2 = std::log(std::abs(std::log(r)));
        double row[3] = {1.0, x1, x2};
        double y = std::log(v);
        for (int i = 0; i < 3; ++i) {
            b[i] += row[i] * y;
            for (int j = 0; j < 3; ++j) a[i][j] += row[i] * row[j];
        }
    }
    // 3x3 Gaussian elimination.
    double m[3][4];
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) m[i][j] = a[i][j];
        m[i][3] = b[i];
    }
    for (int col = 0; col < 3; ++col) {
        int piv = col;
        for (int i = col + 1; i < 3; ++i)
            if (std::abs(m[i][col]) > std::abs(m[piv][col])) piv = i;
        std::swap(m[col], m[piv]);
        for (int i = 0; i < 3; ++i) {
            if (i == col) continue;
            double f = m[i][col] / m[col][col];
            for (int j = col; j < 4; ++j) m[i][j] -= f * m[col][j];
        }
    }
    return {m[1][3] / m[1][1], m[2][3] / m[2][2]};
}

} // namespace l2c
