#pragma once

#include <cmath>
#include <complex>
#include <concepts>
#include <ostream>

#include "tsopt/errors.hpp"

namespace tsopt {

// Second-order hyper-dual number re + e1 E1 + e2 E2 + e12 E1E2 with E1^2 = E2^2 = 0.
struct HyperDual {
    double re = 0.0;
    double e1 = 0.0;
    double e2 = 0.0;
    double e12 = 0.0;

    constexpr HyperDual() = default;
    constexpr HyperDual(double r) : re(r) {}
    constexpr HyperDual(double r, double a, double b, double ab) : re(r), e1(a), e2(b), e12(ab) {}

    static constexpr double kDivisionTolerance = 1e-300;

    HyperDual& operator+=(const HyperDual& o) {
        re += o.re;
        e1 += o.e1;
        e2 += o.e2;
        e12 += o.e12;
        return *this;
    }
    HyperDual& operator-=(const HyperDual& o) {
        re -= o.re;
        e1 -= o.e1;
        e2 -= o.e2;
        e12 -= o.e12;
        return *this;
    }
    HyperDual& operator*=(const HyperDual& o) {
        *this = HyperDual{re * o.re, re * o.e1 + e1 * o.re, re * o.e2 + e2 * o.re,
                          re * o.e12 + e1 * o.e2 + e2 * o.e1 + e12 * o.re};
        return *this;
    }
    HyperDual& operator/=(const HyperDual& o) {
        if (std::abs(o.re) < kDivisionTolerance)
            throw DivisionByZeroRealPart("hyper-dual division by a value with zero real part");
        const double inv = 1.0 / o.re;
        const double inv2 = inv * inv;
        // 1/y = 1/a - b1/a^2 E1 - b2/a^2 E2 + (2 b1 b2/a^3 - b12/a^2) E1E2
        HyperDual recip{inv, -o.e1 * inv2, -o.e2 * inv2, 2.0 * o.e1 * o.e2 * inv2 * inv - o.e12 * inv2};
        return *this *= recip;
    }

    friend HyperDual operator+(HyperDual a, const HyperDual& b) { return a += b; }
    friend HyperDual operator-(HyperDual a, const HyperDual& b) { return a -= b; }
    friend HyperDual operator*(HyperDual a, const HyperDual& b) { return a *= b; }
    friend HyperDual operator/(HyperDual a, const HyperDual& b) { return a /= b; }
    friend HyperDual operator-(const HyperDual& a) { return {-a.re, -a.e1, -a.e2, -a.e12}; }
    friend HyperDual operator+(const HyperDual& a) { return a; }

    friend bool operator==(const HyperDual&, const HyperDual&) = default;

    friend std::ostream& operator<<(std::ostream& os, const HyperDual& h) {
        return os << "(" << h.re << ", " << h.e1 << ", " << h.e2 << ", " << h.e12 << ")";
    }
};

using Complex = std::complex<double>;

template <class T>
concept Scalar = requires(T a, T b, double d) {
    { a + b } -> std::convertible_to<T>;
    { a - b } -> std::convertible_to<T>;
    { a * b } -> std::convertible_to<T>;
    { a / b } -> std::convertible_to<T>;
    { -a } -> std::convertible_to<T>;
    T(d);
};

inline double real_part(double x) { return x; }
inline double real_part(const Complex& x) { return x.real(); }
inline double real_part(const HyperDual& x) { return x.re; }

// Lexicographic sign: the first nonzero component decides. Returns -1, 0 or +1.
inline int sign_of(double x) { return (x > 0) - (x < 0); }
inline int sign_of(const Complex& x) {
    if (x.real() != 0.0) return sign_of(x.real());
    return sign_of(x.imag());
}
inline int sign_of(const HyperDual& x) {
    for (double c : {x.re, x.e1, x.e2, x.e12})
        if (c != 0.0) return sign_of(c);
    return 0;
}

// Cut classification treats zero as positive.
template <class T>
bool is_negative(const T& x) {
    return sign_of(x) < 0;
}

// Magnitude used by the solver pivot test.
inline double scale_of(double x) { return std::abs(x); }
inline double scale_of(const Complex& x) { return std::abs(x.real()); }
inline double scale_of(const HyperDual& x) { return std::abs(x.re); }

}  // namespace tsopt
