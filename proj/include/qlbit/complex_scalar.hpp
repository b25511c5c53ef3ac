#pragma once

#include <cmath>
#include <complex>

#include "qlbit/errors.hpp"
#include "qlbit/gaussian_int.hpp"

namespace qlbit {

using Complex = std::complex<double>;

inline bool is_finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

/// Default tolerance for "is this quantity real" classifications. The
/// obstruction loci are measure-zero, so this only distinguishes numerical
/// proximity; exact Q(i) predicates are the sharp path.
inline constexpr double kRealityTol = 1e-10;

/// Nonzero amplitude ratio r = omega2/omega1. Only defined for nonbasis states.
struct AmplitudeRatio {
    Complex value;

    explicit AmplitudeRatio(Complex v) : value(v) {
        if (v == Complex{0.0, 0.0})
            throw Error(ErrorCode::InvalidArgument, "amplitude ratio must be nonzero");
        if (!is_finite(v))
            throw Error(ErrorCode::InvalidArgument, "amplitude ratio must be finite");
    }
};

/// Normalized two-level target (omega1, omega2), |omega1|^2 + |omega2|^2 = 1.
struct TargetState {
    Complex omega1;
    Complex omega2;

    TargetState(Complex w1, Complex w2) : omega1(w1), omega2(w2) {
        const double n = std::norm(w1) + std::norm(w2);
        if (!std::isfinite(n) || std::abs(n - 1.0) > 1e-12)
            throw Error(ErrorCode::InvalidArgument, "target state is not normalized");
    }

    /// Build from arbitrary nonzero amplitudes, normalizing.
    static TargetState normalized(Complex w1, Complex w2) {
        const double n = std::sqrt(std::norm(w1) + std::norm(w2));
        if (n == 0.0 || !std::isfinite(n))
            throw Error(ErrorCode::InvalidArgument, "cannot normalize zero/non-finite amplitudes");
        return {w1 / n, w2 / n};
    }

    bool is_basis() const { return omega1 == Complex{} || omega2 == Complex{}; }
};

/// r = omega2/omega1. Errors on basis states, where the ratio is undefined.
AmplitudeRatio ratio_from_state(const TargetState& s);

/// Reconstruct the normalized state of ratio r with omega1 = e^{i theta}/sqrt(1+|r|^2).
/// The phase theta is exposed but never inferred; it defaults to 0.
TargetState state_from_ratio(const AmplitudeRatio& r, double global_phase = 0.0);

/// Reality classification of an amplitude ratio, the four predicates that
/// drive the coupling-class taxonomy.
struct PhaseFlags {
    bool square_real;      // r^2 in R
    bool sum_inverse_real; // r + 1/r in R
    bool unimodular;       // |r| = 1
    bool real;             // r in R
};

/// Floating-point classification with tolerance (|Im .| <= tol, ||r|-1| <= tol).
PhaseFlags phase_classify(const AmplitudeRatio& r, double tol = kRealityTol);

/// Exact classification for ratios given in Q(i). No tolerance involved.
PhaseFlags phase_classify_exact(const GaussianRational& r);

/// Exact classification when only r^2 is available in Q(i) (r itself may be
/// irrational, e.g. r = e^{i pi/4} with r^2 = i). For nonzero r:
///   r in R            <=>  r^2 real and positive
///   r purely imaginary <=> r^2 real and negative
///   |r| = 1           <=>  |r^2| = 1
///   r + 1/r in R      <=>  r in R or |r| = 1
PhaseFlags phase_classify_from_square(const GaussianRational& r_squared);

} // namespace qlbit
