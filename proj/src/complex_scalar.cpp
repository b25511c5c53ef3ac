#include "qlbit/complex_scalar.hpp"

namespace qlbit {

AmplitudeRatio ratio_from_state(const TargetState& s) {
    if (s.omega1 == Complex{} || s.omega2 == Complex{})
        throw Error(ErrorCode::BasisState, "amplitude ratio undefined for basis states");
    return AmplitudeRatio(s.omega2 / s.omega1);
}

TargetState state_from_ratio(const AmplitudeRatio& r, double global_phase) {
    const double mag = 1.0 / std::sqrt(1.0 + std::norm(r.value));
    const Complex omega1 = std::polar(mag, global_phase);
    return TargetState(omega1, r.value * omega1);
}

PhaseFlags phase_classify(const AmplitudeRatio& r, double tol) {
    if (tol < 0.0) throw Error(ErrorCode::InvalidArgument, "tolerance must be nonnegative");
    const Complex v = r.value;
    PhaseFlags f{};
    f.square_real = std::abs(std::imag(v * v)) <= tol;
    f.sum_inverse_real = std::abs(std::imag(v + 1.0 / v)) <= tol;
    f.unimodular = std::abs(std::abs(v) - 1.0) <= tol;
    f.real = std::abs(v.imag()) <= tol;
    // Consistency: exact membership in R implies the derived predicates.
    if (f.real) {
        f.square_real = true;
        f.sum_inverse_real = true;
    }
    return f;
}

PhaseFlags phase_classify_exact(const GaussianRational& r) {
    if (r.is_zero()) throw Error(ErrorCode::InvalidArgument, "ratio must be nonzero");
    PhaseFlags f{};
    f.real = r.is_real();
    f.square_real = (r * r).is_real();
    f.sum_inverse_real = (r + r.inverse()).is_real();
    f.unimodular = r.is_unimodular();
    return f;
}

PhaseFlags phase_classify_from_square(const GaussianRational& r2) {
    if (r2.is_zero()) throw Error(ErrorCode::InvalidArgument, "square of a nonzero ratio cannot be zero");
    PhaseFlags f{};
    const GaussianInt p = r2.real_den_numerator(); // r2 = p / real_den, real_den > 0
    f.square_real = (p.d == 0);
    f.real = f.square_real && p.c > 0;
    f.unimodular = r2.is_unimodular();
    f.sum_inverse_real = f.real || f.unimodular;
    return f;
}

} // namespace qlbit
