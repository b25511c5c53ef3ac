#pragma once

#include <complex>
#include <cstdint>
#include <numeric>
#include <ostream>

#include "qlbit/errors.hpp"

namespace qlbit {

/// Exact Gaussian integer c + d*i. All arithmetic is integer arithmetic;
/// no operation ever rounds.
struct GaussianInt {
    std::int64_t c = 0; // real part
    std::int64_t d = 0; // imaginary part

    constexpr GaussianInt() = default;
    constexpr GaussianInt(std::int64_t re, std::int64_t im = 0) : c(re), d(im) {}

    constexpr bool is_zero() const { return c == 0 && d == 0; }

    constexpr GaussianInt conj() const { return {c, -d}; }
    constexpr GaussianInt operator-() const { return {-c, -d}; }

    /// Field norm c^2 + d^2. Nonnegative, zero only for zero.
    constexpr std::int64_t norm() const { return c * c + d * d; }

    constexpr friend GaussianInt operator+(GaussianInt a, GaussianInt b) {
        return {a.c + b.c, a.d + b.d};
    }
    constexpr friend GaussianInt operator-(GaussianInt a, GaussianInt b) {
        return {a.c - b.c, a.d - b.d};
    }
    constexpr friend GaussianInt operator*(GaussianInt a, GaussianInt b) {
        return {a.c * b.c - a.d * b.d, a.c * b.d + a.d * b.c};
    }
    constexpr friend bool operator==(GaussianInt a, GaussianInt b) {
        return a.c == b.c && a.d == b.d;
    }

    GaussianInt& operator+=(GaussianInt b) { return *this = *this + b; }
    GaussianInt& operator-=(GaussianInt b) { return *this = *this - b; }
    GaussianInt& operator*=(GaussianInt b) { return *this = *this * b; }

    std::complex<double> to_complex() const {
        return {static_cast<double>(c), static_cast<double>(d)};
    }
};

inline std::ostream& operator<<(std::ostream& os, GaussianInt z) {
    os << z.c;
    if (z.d >= 0) os << "+" << z.d << "i";
    else os << "-" << -z.d << "i";
    return os;
}

/// Exact element of Q(i), stored as an unreduced fraction num/den over Z[i].
/// Equality is cross-multiplication equality; reduce() is available but never
/// forced, so no canonical form is assumed anywhere.
struct GaussianRational {
    GaussianInt num;
    GaussianInt den{1, 0};

    GaussianRational() = default;
    GaussianRational(GaussianInt n, GaussianInt d = GaussianInt{1}) : num(n), den(d) {
        if (den.is_zero()) throw Error(ErrorCode::InvalidArgument, "Gaussian rational with zero denominator");
    }

    bool is_zero() const { return num.is_zero(); }

    GaussianRational conj() const { return {num.conj(), den.conj()}; }

    friend GaussianRational operator+(const GaussianRational& a, const GaussianRational& b) {
        return {a.num * b.den + b.num * a.den, a.den * b.den};
    }
    friend GaussianRational operator-(const GaussianRational& a, const GaussianRational& b) {
        return {a.num * b.den - b.num * a.den, a.den * b.den};
    }
    friend GaussianRational operator*(const GaussianRational& a, const GaussianRational& b) {
        return {a.num * b.num, a.den * b.den};
    }
    friend GaussianRational operator/(const GaussianRational& a, const GaussianRational& b) {
        if (b.num.is_zero()) throw Error(ErrorCode::InvalidArgument, "division by zero in Q(i)");
        return {a.num * b.den, a.den * b.num};
    }
    friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
        return a.num * b.den == b.num * a.den;
    }

    GaussianRational inverse() const {
        if (num.is_zero()) throw Error(ErrorCode::InvalidArgument, "inverse of zero in Q(i)");
        return {den, num};
    }

    /// num/den rewritten over a real denominator: (num * conj(den)) / norm(den).
    /// Exact; the imaginary part of the value has sign of p.d.
    GaussianInt real_den_numerator() const { return num * den.conj(); }
    std::int64_t real_den() const { return den.norm(); }

    /// Exact predicate Im(value) == 0.
    bool is_real() const { return real_den_numerator().d == 0; }

    /// Exact predicate |value| == 1, i.e. norm(num) == norm(den).
    bool is_unimodular() const { return num.norm() == den.norm(); }

    std::complex<double> to_complex() const {
        const GaussianInt p = real_den_numerator();
        const double s = static_cast<double>(real_den());
        return {static_cast<double>(p.c) / s, static_cast<double>(p.d) / s};
    }

    /// Divide num and den by their common rational-integer content. Keeps the
    /// entries small during sweeps; equality semantics are unchanged.
    GaussianRational reduced() const {
        std::int64_t g = std::gcd(std::gcd(std::abs(num.c), std::abs(num.d)),
                                  std::gcd(std::abs(den.c), std::abs(den.d)));
        if (g <= 1) return *this;
        return {{num.c / g, num.d / g}, {den.c / g, den.d / g}};
    }
};

} // namespace qlbit
