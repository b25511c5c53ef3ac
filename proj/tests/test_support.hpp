#pragma once

// Shared helpers and independent oracles for the test suites. Oracles here
// must not reuse the library's computational path for the quantity they
// check: the 2x2 spectrum comes from the plain quadratic formula, full
// spectra come from LAPACK.

#include <algorithm>
#include <complex>
#include <random>
#include <vector>

#include "qlbit/dense.hpp"
#include "qlbit/effective_design.hpp"
#include "qlbit/errors.hpp"

namespace testsup {

using qlbit::Complex;
using qlbit::Matrix;
using qlbit::Vector;

inline std::mt19937_64 rng(std::uint64_t seed) { return std::mt19937_64(seed); }

inline double uniform(std::mt19937_64& g, double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(g);
}

inline Complex random_unit_phase(std::mt19937_64& g) {
    return std::polar(1.0, uniform(g, 0.0, 2.0 * 3.14159265358979323846));
}

/// Log-uniform modulus in [rlo, rhi], uniform phase.
inline Complex random_annulus(std::mt19937_64& g, double rlo, double rhi) {
    const double m = std::exp(uniform(g, std::log(rlo), std::log(rhi)));
    return m * random_unit_phase(g);
}

inline Complex random_box(std::mt19937_64& g, double half_width = 1.0) {
    return {uniform(g, -half_width, half_width), uniform(g, -half_width, half_width)};
}

inline Matrix random_matrix(std::mt19937_64& g, std::size_t n, std::size_t m) {
    Matrix a(n, m);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < m; ++j) a(i, j) = random_box(g);
    return a;
}

inline Matrix random_hermitian(std::mt19937_64& g, std::size_t n) {
    Matrix a(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        a(i, i) = Complex{uniform(g, -1.0, 1.0), 0.0};
        for (std::size_t j = i + 1; j < n; ++j) {
            const Complex v = random_box(g);
            a(i, j) = v;
            a(j, i) = std::conj(v);
        }
    }
    return a;
}

inline Vector random_unit_vector(std::mt19937_64& g, std::size_t n) {
    Vector v(n);
    for (auto& x : v) x = random_box(g);
    return qlbit::normalized(std::move(v));
}

/// Plain quadratic-formula spectrum of a 2x2 block: the hand oracle for eig2.
inline std::vector<Complex> oracle_eig2_values(const qlbit::EffectiveBlock& m) {
    const Complex tr = m.m11 + m.m22;
    const Complex det = m.m11 * m.m22 - m.m12 * m.m21;
    const Complex disc = std::sqrt(tr * tr - 4.0 * det);
    return {0.5 * (tr - disc), 0.5 * (tr + disc)};
}

/// Greedy nearest multiset match; true when every value pairs within tol.
inline bool multiset_match(std::vector<Complex> a, std::vector<Complex> b, double tol) {
    if (a.size() != b.size()) return false;
    for (const Complex& x : a) {
        double best = 1e300;
        std::size_t bi = b.size();
        for (std::size_t i = 0; i < b.size(); ++i) {
            const double d = std::abs(x - b[i]);
            if (d < best) {
                best = d;
                bi = i;
            }
        }
        if (bi == b.size() || best > tol) return false;
        b.erase(b.begin() + static_cast<std::ptrdiff_t>(bi));
    }
    return true;
}

/// Runs fn and reports whether it threw a qlbit::Error with the given code.
template <typename F>
bool throws_code(qlbit::ErrorCode code, F&& fn) {
    try {
        fn();
    } catch (const qlbit::Error& e) {
        return e.code() == code;
    } catch (...) {
        return false;
    }
    return false;
}

} // namespace testsup
