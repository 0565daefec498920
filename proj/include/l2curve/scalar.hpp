#pragma once

#include <boost/multiprecision/gmp.hpp>
#include <complex>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

namespace l2c {

using Rational = boost::multiprecision::mpq_rational;
using Complex = std::complex<double>;

// Element of Q(i), the scalar field of the exact backend.
struct GaussianRational {
    Rational re{0};
    Rational im{0};

    GaussianRational() = default;
    GaussianRational(int v) : re(v) {}
    GaussianRational(Rational r) : re(std::move(r)) {}
    GaussianRational(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}

    bool is_zero() const { return re == 0 && im == 0; }

    friend GaussianRational operator+(const GaussianRational& a, const GaussianRational& b) {
        return {a.re + b.re, a.im + b.im};
    }
    friend GaussianRational operator-(const GaussianRational& a, const GaussianRational& b) {
        return {a.re - b.re, a.im - b.im};
    }
    friend GaussianRational operator-(const GaussianRational& a) { return {-a.re, -a.im}; }
    friend GaussianRational operator*(const GaussianRational& a, const GaussianRational& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend GaussianRational operator/(const GaussianRational& a, const GaussianRational& b) {
        Rational n = b.re * b.re + b.im * b.im;
        if (n == 0) throw std::domain_error("division by zero in Q(i)");
        return {(a.re * b.re + a.im * b.im) / n, (a.im * b.re - a.re * b.im) / n};
    }
    GaussianRational& operator+=(const GaussianRational& b) { return *this = *this + b; }
    GaussianRational& operator-=(const GaussianRational& b) { return *this = *this - b; }
    GaussianRational& operator*=(const GaussianRational& b) { return *this = *this * b; }
    GaussianRational& operator/=(const GaussianRational& b) { return *this = *this / b; }
    friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
        return a.re == b.re && a.im == b.im;
    }
    friend bool operator!=(const GaussianRational& a, const GaussianRational& b) { return !(a == b); }

    GaussianRational conj() const { return {re, -im}; }
    Complex to_complex() const {
        return {static_cast<double>(re), static_cast<double>(im)};
    }
};

inline GaussianRational gauss_i() { return {Rational(0), Rational(1)}; }

// Field abstraction shared by the exact and floating backends.  Zero tests in
// the float backend compare against tau scaled by the caller-provided
// magnitude of the ambient data.
template <class K> struct FieldTraits;

template <> struct FieldTraits<GaussianRational> {
    using Real = Rational;
    static constexpr bool exact = true;
    static GaussianRational zero() { return {}; }
    static GaussianRational one() { return {1}; }
    static GaussianRational from_int(long v) { return {Rational(v)}; }
    static bool is_zero(const GaussianRational& x, double /*scale*/, double /*tau*/) {
        return x.is_zero();
    }
    static GaussianRational conj(const GaussianRational& x) { return x.conj(); }
    static double abs(const GaussianRational& x) { return std::abs(x.to_complex()); }
    static Complex to_complex(const GaussianRational& x) { return x.to_complex(); }
};

template <> struct FieldTraits<Complex> {
    using Real = double;
    static constexpr bool exact = false;
    static Complex zero() { return {0.0, 0.0}; }
    static Complex one() { return {1.0, 0.0}; }
    static Complex from_int(long v) { return {static_cast<double>(v), 0.0}; }
    static bool is_zero(const Complex& x, double scale, double tau) {
        return std::abs(x) <= tau * (scale > 0 ? scale : 1.0);
    }
    static Complex conj(const Complex& x) { return std::conj(x); }
    static double abs(const Complex& x) { return std::abs(x); }
    static Complex to_complex(const Complex& x) { return x; }
};

// Rational number in the half-open interval (-1, 0]; the exponent alpha (or
// beta) of a unit-circle eigenvalue e^{2 pi i alpha}.
struct RotationNumber {
    Rational value{0};

    RotationNumber() = default;
    explicit RotationNumber(Rational v) : value(std::move(v)) {
        if (!(value > -1 && value <= 0)) throw std::invalid_argument("rotation number outside (-1,0]");
    }
    static RotationNumber reduce(const Rational& v) {
        Rational w = v;
        while (w > 0) w -= 1;
        while (w <= -1) w += 1;
        return RotationNumber(w);
    }
    bool is_zero() const { return value == 0; }
    friend bool operator==(const RotationNumber& a, const RotationNumber& b) { return a.value == b.value; }
    friend bool operator<(const RotationNumber& a, const RotationNumber& b) { return a.value < b.value; }
    double to_double() const { return static_cast<double>(value); }
};

// "p/q", "p", "p/q+r/s i", "p/q-r/s i", "i", "-i" and friends.
GaussianRational parse_gaussian(const std::string& text);
std::string format_rational(const Rational& r);
std::string format_gaussian(const GaussianRational& x);
std::string format_double(double v);
std::string format_complex(const Complex& z);

// Best rational approximation with bounded denominator (Stern-Brocot walk);
// nullopt when no denominator <= max_den comes within eps.
std::optional<Rational> rationalize(double x, long max_den, double eps);

} // namespace l2c
