#include "l2curve/scalar.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace l2c {

namespace {

// mpq rejects a leading '+'.
Rational make_rational(std::string text) {
    if (!text.empty() && text[0] == '+') text.erase(0, 1);
    return Rational(text);
}

// One signed rational, consuming "p", "p/q" or "p.ddd".
Rational parse_rational_token(const std::string& s, size_t& pos) {
    size_t start = pos;
    if (pos < s.size() && (s[pos] == '+' || s[pos] == '-')) ++pos;
    size_t digits = pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    if (pos == digits) throw std::invalid_argument("expected number in scalar: " + s);
    if (pos < s.size() && s[pos] == '/') {
        ++pos;
        size_t den_start = pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
        if (pos == den_start) throw std::invalid_argument("expected denominator in scalar: " + s);
        Rational num = make_rational(s.substr(start, den_start - 1 - start));
        Rational den = make_rational(s.substr(den_start, pos - den_start));
        if (den == 0) throw std::invalid_argument("zero denominator in scalar: " + s);
        return num / den;
    }
    if (pos < s.size() && s[pos] == '.') {
        ++pos;
        size_t frac_start = pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
        std::string ipart = s.substr(start, frac_start - 1 - start);
        std::string fpart = s.substr(frac_start, pos - frac_start);
        Rational value = make_rational(ipart.empty() || ipart == "-" || ipart == "+" ? ipart + "0" : ipart);
        if (!fpart.empty()) {
            Rational scale = 1;
            for (size_t i = 0; i < fpart.size(); ++i) scale *= 10;
            Rational frac = make_rational(fpart) / scale;
            if (value < 0 || (!ipart.empty() && ipart[0] == '-')) value = Rational(value - frac);
            else value = Rational(value + frac);
        }
        return value;
    }
    return make_rational(s.substr(start, pos - start));
}

} // namespace

GaussianRational parse_gaussian(const std::string& text) {
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
    if (s.empty()) throw std::invalid_argument("empty scalar");

    // Pure imaginary shorthand: "i", "-i", "3/4i".
    if (s.back() == 'i') {
        std::string body = s.substr(0, s.size() - 1);
        // Split body at the last top-level +/- that separates re and im parts.
        for (size_t cut = body.size(); cut-- > 1;) {
            if ((body[cut] == '+' || body[cut] == '-') && body[cut - 1] != '/' && body[cut - 1] != '+' &&
                body[cut - 1] != '-') {
                size_t p = 0;
                Rational re = parse_rational_token(body.substr(0, cut), p);
                std::string imtok = body.substr(cut);
                Rational im = (imtok == "+") ? Rational(1) : (imtok == "-") ? Rational(-1) : [&] {
                    size_t q = 0;
                    return parse_rational_token(imtok, q);
                }();
                return {re, im};
            }
        }
        if (body.empty() || body == "+") return {Rational(0), Rational(1)};
        if (body == "-") return {Rational(0), Rational(-1)};
        size_t p = 0;
        Rational im = parse_rational_token(body, p);
        if (p != body.size()) throw std::invalid_argument("bad scalar: " + text);
        return {Rational(0), im};
    }
    size_t p = 0;
    Rational re = parse_rational_token(s, p);
    if (p != s.size()) throw std::invalid_argument("bad scalar: " + text);
    return {re, Rational(0)};
}

std::string format_rational(const Rational& r) {
    std::ostringstream out;
    out << r;
    return out.str();
}

std::string format_gaussian(const GaussianRational& x) {
    if (x.im == 0) return format_rational(x.re);
    std::string im = format_rational(x.im) + "i";
    if (x.re == 0) return im;
    return format_rational(x.re) + (x.im > 0 ? "+" : "") + im;
}

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string format_complex(const Complex& z) {
    if (z.imag() == 0.0) return format_double(z.real());
    return format_double(z.real()) + (z.imag() >= 0 ? "+" : "") + format_double(z.imag()) + "i";
}

std::optional<Rational> rationalize(double x, long max_den, double eps) {
    if (!std::isfinite(x)) return std::nullopt;
    double intpart;
    double frac = std::modf(x, &intpart);
    if (frac < 0) {
        frac += 1.0;
        intpart -= 1.0;
    }
    // Stern-Brocot walk on [0,1).
    long a = 0, b = 1, c = 1, d = 1;
    long best_p = 0, best_q = 1;
    double best_err = std::abs(frac);
    for (int iter = 0; iter < 64 && b + d <= max_den; ++iter) {
        long p = a + c, q = b + d;
        double mid = static_cast<double>(p) / q;
        double err = std::abs(frac - mid);
        if (err < best_err) {
            best_err = err;
            best_p = p;
            best_q = q;
        }
        if (frac < mid) {
            c = p;
            d = q;
        } else {
            a = p;
            b = q;
        }
    }
    if (std::abs(frac - 1.0) < best_err) {
        best_p = 1;
        best_q = 1;
        best_err = std::abs(frac - 1.0);
    }
    if (best_err > eps) return std::nullopt;
    return Rational(best_p, best_q) + Rational(static_cast<long>(intpart));
}

} // namespace l2c
