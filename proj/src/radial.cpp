#include "l2curve/radial.hpp"

#include <algorithm>
#include <cmath>

namespace l2c {

RadialFn RadialFn::monomial(Rational a, int b, Complex c) {
    if (b < 0) throw InternalError("negative log power in radial function");
    RadialFn f;
    if (c != Complex(0.0, 0.0)) f.terms.push_back({std::move(a), b, c});
    return f;
}

bool RadialFn::is_zero(double eps) const {
    for (const auto& t : terms)
        if (std::abs(t.c) > eps) return false;
    return true;
}

double RadialFn::max_coeff() const {
    double m = 0;
    for (const auto& t : terms) m = std::max(m, std::abs(t.c));
    return m;
}

void RadialFn::combine() {
    std::sort(terms.begin(), terms.end(), [](const RadialTerm& x, const RadialTerm& y) {
        if (x.a != y.a) return x.a < y.a;
        return x.b < y.b;
    });
    std::vector<RadialTerm> out;
    for (const auto& t : terms) {
        if (!out.empty() && out.back().a == t.a && out.back().b == t.b)
            out.back().c += t.c;
        else
            out.push_back(t);
    }
    std::erase_if(out, [](const RadialTerm& t) { return t.c == Complex(0.0, 0.0); });
    terms = std::move(out);
}

RadialFn RadialFn::operator+(const RadialFn& o) const {
    RadialFn f = *this;
    f.terms.insert(f.terms.end(), o.terms.begin(), o.terms.end());
    f.combine();
    return f;
}

RadialFn RadialFn::operator-(const RadialFn& o) const { return *this + o.scaled({-1.0, 0.0}); }

RadialFn RadialFn::scaled(Complex f) const {
    RadialFn out = *this;
    for (auto& t : out.terms) t.c *= f;
    return out;
}

RadialFn RadialFn::shifted(const Rational& da, int db) const {
    RadialFn out = *this;
    for (auto& t : out.terms) {
        t.a += da;
        t.b += db;
        if (t.b < 0) throw InternalError("negative log power after shift");
    }
    return out;
}

RadialFn RadialFn::derivative() const {
    // d/dr [r^a L^b] = a r^{a-1} L^b - b r^{a-1} L^{b-1}.
    RadialFn out;
    for (const auto& t : terms) {
        if (t.a != 0) out.terms.push_back({t.a - 1, t.b, t.c * static_cast<double>(t.a)});
        if (t.b > 0) out.terms.push_back({t.a - 1, t.b - 1, -t.c * static_cast<double>(t.b)});
    }
    out.combine();
    return out;
}

namespace {

// Antiderivative of r^a L^b:
//   a != -1 : r^{a+1} L^b / (a+1) + b/(a+1) * (antiderivative of r^a L^{b-1})
//   a == -1 : -L^{b+1} / (b+1)
void antiderivative_term(const RadialTerm& t, std::vector<RadialTerm>& out) {
    if (t.a == -1) {
        out.push_back({Rational(0), t.b + 1, -t.c / static_cast<double>(t.b + 1)});
        return;
    }
    RadialTerm cur = t;
    double factor = 1.0;
    while (true) {
        double a1 = static_cast<double>(cur.a) + 1.0;
        out.push_back({cur.a + 1, cur.b, cur.c * factor / a1});
        if (cur.b == 0) break;
        factor = factor * static_cast<double>(cur.b) / a1;
        // Remaining integral of r^a L^{b-1} with accumulated factor.
        RadialTerm next{cur.a, cur.b - 1, cur.c};
        cur = next;
    }
}

} // namespace

RadialFn RadialFn::primitive_from_zero() const {
    RadialFn anti;
    for (const auto& t : terms) antiderivative_term(t, anti.terms);
    anti.combine();
    // F(0) contribution: terms with positive exponent vanish; anything else
    // means the integral from 0 diverges.
    for (const auto& t : anti.terms)
        if (!(t.a > 0)) throw InternalError("primitive_from_zero on a divergent integrand");
    return anti;
}

RadialFn RadialFn::primitive_to_radius(double big_r) const {
    RadialFn anti;
    for (const auto& t : terms) antiderivative_term(t, anti.terms);
    anti.combine();
    Complex at_r = anti.eval(big_r);
    RadialFn out = anti;
    if (at_r != Complex(0.0, 0.0)) out.terms.push_back({Rational(0), 0, -at_r});
    out.combine();
    return out;
}

Complex RadialFn::eval(double r) const {
    if (r <= 0 || r >= 1) throw InputError("radial evaluation needs 0 < r < 1");
    double logr = std::log(1.0 / r);
    Complex acc{0.0, 0.0};
    for (const auto& t : terms)
        acc += t.c * std::pow(r, static_cast<double>(t.a)) * std::pow(logr, t.b);
    return acc;
}

namespace {

// 16-point Gauss-Legendre nodes/weights on [-1, 1].
constexpr int kGaussN = 16;
constexpr double kGaussX[kGaussN] = {
    -0.9894009349916499, -0.9445750230732326, -0.8656312023878318, -0.7554044083550030,
    -0.6178762444026438, -0.4580167776572274, -0.2816035507792589, -0.0950125098376374,
    0.0950125098376374,  0.2816035507792589,  0.4580167776572274,  0.6178762444026438,
    0.7554044083550030,  0.8656312023878318,  0.9445750230732326,  0.9894009349916499};
constexpr double kGaussW[kGaussN] = {
    0.0271524594117541, 0.0622535239386479, 0.0951585116824928, 0.1246289712555339,
    0.1495959888165767, 0.1691565193950025, 0.1826034150449236, 0.1894506104550685,
    0.1894506104550685, 0.1826034150449236, 0.1691565193950025, 0.1495959888165767,
    0.1246289712555339, 0.0951585116824928, 0.0622535239386479, 0.0271524594117541};

double gauss_panel(double s, int q, double lo, double hi) {
    double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
    double acc = 0;
    for (int i = 0; i < kGaussN; ++i) {
        double u = mid + half * kGaussX[i];
        acc += kGaussW[i] * std::exp(-s * u) * std::pow(u, q);
    }
    return acc * half;
}

// integral_{u0}^{u1} e^{-s u} u^q du by composite panels with doubling.
double adaptive_segment(double s, int q, double u0, double u1, const QuadratureControl& qc) {
    int panels = qc.initial_panels * qc.refine;
    double prev = 0;
    for (int round = 0;; ++round) {
        double acc = 0;
        double h = (u1 - u0) / panels;
        for (int i = 0; i < panels; ++i) acc += gauss_panel(s, q, u0 + i * h, u0 + (i + 1) * h);
        if (round > 0 && std::abs(acc - prev) <= qc.rel_tol * std::max(1e-300, std::abs(acc))) return acc;
        if (round >= qc.max_doublings) return acc;
        prev = acc;
        panels *= 2;
    }
}

} // namespace

WeightedIntegral weighted_power_integral(double p, int q, double big_r, const QuadratureControl& qc) {
    if (!(big_r > 0 && big_r < 1)) throw InputError("weighted integral needs 0 < R < 1");
    double s = p + 1.0;
    double u0 = std::log(1.0 / big_r);
    if (s < -1e-307) return {false, 0.0};
    if (std::abs(s) <= 1e-307) {
        if (q >= -1) return {false, 0.0};
        return {true, std::pow(u0, q + 1) / static_cast<double>(-q - 1)};
    }
    // Truncate the tail where e^{-s u} u^q is negligible.
    double acc = 0;
    double lo = u0;
    double width = std::max(1.0, 8.0 / s);
    for (int seg = 0; seg < 200; ++seg) {
        double hi = lo + width;
        acc += adaptive_segment(s, q, lo, hi, qc);
        double tail_scale = std::exp(-s * hi) * std::pow(hi, std::max(q, 0)) * (1.0 + std::abs(1.0 / s));
        if (tail_scale <= qc.rel_tol * 1e-4 * std::max(std::abs(acc), 1e-300)) break;
        lo = hi;
        width *= 2;
    }
    return {true, acc};
}

WeightedIntegral weighted_square_integral(const RadialFn& f, const Rational& p, int q, double big_r,
                                          const QuadratureControl& qc) {
    WeightedIntegral total{true, 0.0};
    for (const auto& t1 : f.terms)
        for (const auto& t2 : f.terms) {
            Complex coeff = t1.c * std::conj(t2.c);
            if (coeff == Complex(0.0, 0.0)) continue;
            double pp = static_cast<double>(t1.a + t2.a + p);
            int qq = t1.b + t2.b + q;
            WeightedIntegral piece = weighted_power_integral(pp, qq, big_r, qc);
            if (!piece.finite) return {false, 0.0};
            total.value += coeff.real() * piece.value;
        }
    if (total.value < 0 && total.value > -1e-12) total.value = 0;
    return total;
}

} // namespace l2c
