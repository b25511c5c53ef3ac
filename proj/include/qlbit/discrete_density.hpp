#pragma once

#include "qlbit/complex_scalar.hpp"
#include "qlbit/gaussian_int.hpp"

namespace qlbit {

/// Exact balanced Hermitian design for the ratio r = z/w at lambda = 0:
///   tau = |z|^2, l = w conj(z), kA = |z|^2, kB = |w|^2, delta = kA + kB.
/// All fields are integers or Gaussian integers; the eigen equations hold
/// identically over Q(i).
struct DiscreteDesign {
    GaussianInt z;
    GaussianInt w;
    std::int64_t lambda = 0;
    std::int64_t tau = 0;
    GaussianInt l;
    std::int64_t kA = 0;
    std::int64_t kB = 0;
    std::int64_t delta = 0;
    std::size_t q = 0; // even block size; 0 until chosen

    GaussianRational ratio() const { return {z, w}; }
};

/// Populate a design from z, w (both nonzero) and verify the lambda = 0
/// eigen equations kA - l r = 0 and kB - conj(l)/r = 0 exactly in Q(i).
/// q is set to minimal_even_q of the result.
DiscreteDesign discrete_design_from_ratio(GaussianInt z, GaussianInt w);

/// Smallest even q admitting the design: |Re l| + |Im l| <= q and
/// max(kA, kB) <= q - 1. Returns 2 for the fully trivial design.
std::size_t minimal_even_q(const DiscreteDesign& d);

/// Chordal Fubini-Study distance on CP^1 in the ratio chart:
/// |r1 - r2| / sqrt((1+|r1|^2)(1+|r2|^2)).
double projective_distance(Complex r1, Complex r2);
/// Distance from the basis-state point at infinity to the ratio r.
double projective_distance_to_infinity(Complex r);

struct ApproximationResult {
    Complex target;
    GaussianRational approx;
    double projective_error = 0.0;
    DiscreteDesign design;
};

/// Deterministic Gaussian-rational approximation: sweep denominators w over
/// norm(w) <= N with z the nearest Gaussian integer to target*w, doubling N
/// until some candidate meets epsilon. Among admissible candidates the one
/// minimizing (max(norm z, norm w), norm w, Re w, Im w) wins, which keeps the
/// induced block size q as small as the sweep allows.
ApproximationResult approximate_ratio(Complex target, double epsilon);

struct ExactVerifyReport {
    bool pass = false;
    std::size_t q = 0;
    std::size_t rows_checked = 0;
    bool dense_cross_checked = false; // dense-object route also ran (small q)
};

/// Exact Z[i] verification of a design at its q: the circulant diagonal
/// blocks are k-regular, the matching coupling has exact row and column sums
/// l with entries in mu4+0, and H psi = 0 componentwise for the unnormalized
/// eigenvector (w 1_q, z 1_q). Every check is integer arithmetic with zero
/// tolerance; a failure throws ExactCheckFailed. For q <= 256 the check also
/// runs against the materialized graph/coupling objects; above that it
/// streams one row at a time off the generating rule.
ExactVerifyReport exact_verify_discrete(const DiscreteDesign& d);

} // namespace qlbit
