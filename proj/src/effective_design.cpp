#include "qlbit/effective_design.hpp"

#include <cmath>

#include "qlbit/errors.hpp"

namespace qlbit {

namespace {

const double kPi = std::acos(-1.0);

bool near_real(Complex v, double tol) { return std::abs(v.imag()) <= tol; }

// r^2 = -1 within tolerance, i.e. r = +-i.
bool is_degenerate_ratio(Complex r, double tol) { return std::abs(r * r + 1.0) <= tol; }

PhaseFlags flags_of(const AmplitudeRatio& r, double tol) { return phase_classify(r, tol); }

} // namespace

const char* to_string(CouplingClass c) {
    switch (c) {
        case CouplingClass::ComplexSymmetric: return "complex-symmetric";
        case CouplingClass::RealSymComplexDetuning: return "real-coupling";
        case CouplingClass::Hermitian: return "hermitian";
        case CouplingClass::AsymmetricCommonK: return "asymmetric";
        case CouplingClass::Generalized: return "generalized";
    }
    return "?";
}

void DesignParams::validate(double tol) const {
    const double scale = 1.0 + std::abs(kA) + std::abs(kB) + std::abs(lA) + std::abs(lB);
    const double t = tol * scale;
    switch (cls) {
        case CouplingClass::ComplexSymmetric:
            if (!near_real(kA, t) || !near_real(kB, t))
                throw Error(ErrorCode::ClassInvariantViolation, "complex-symmetric needs real kA, kB");
            if (std::abs(lA - lB) > t)
                throw Error(ErrorCode::ClassInvariantViolation, "complex-symmetric needs lA = lB");
            break;
        case CouplingClass::RealSymComplexDetuning:
            if (!near_real(lA, t) || std::abs(lA - lB) > t)
                throw Error(ErrorCode::ClassInvariantViolation, "real-coupling needs lA = lB real");
            break;
        case CouplingClass::Hermitian:
            if (!near_real(kA, t) || !near_real(kB, t))
                throw Error(ErrorCode::ClassInvariantViolation, "hermitian needs real kA, kB");
            if (std::abs(lB - std::conj(lA)) > t)
                throw Error(ErrorCode::ClassInvariantViolation, "hermitian needs lB = conj(lA)");
            break;
        case CouplingClass::AsymmetricCommonK:
            if (std::abs(kA - kB) > t)
                throw Error(ErrorCode::ClassInvariantViolation, "asymmetric-common-k needs kA = kB");
            break;
        case CouplingClass::Generalized:
            break;
    }
}

double EffectiveBlock::frob() const {
    return std::sqrt(std::norm(m11) + std::norm(m12) + std::norm(m21) + std::norm(m22));
}

bool EffectiveBlock::hermitian(double tol) const {
    return std::abs(m11.imag()) <= tol && std::abs(m22.imag()) <= tol &&
           std::abs(m21 - std::conj(m12)) <= tol;
}

EffectiveBlock reduce(const DesignParams& p) {
    p.validate();
    return {p.kA, -p.lA, -p.lB, p.kB};
}

Eig2 eig2(const EffectiveBlock& m) {
    Eig2 out;
    const double scale = m.frob();
    const Complex tr = m.trace();

    Complex l1, l2;
    if (m.hermitian(1e-14 * (1.0 + scale))) {
        // Hermitian path: the discriminant is a nonnegative real, so the
        // eigenvalues come out exactly real.
        const double a = m.m11.real(), d = m.m22.real();
        const double disc = std::sqrt((a - d) * (a - d) + 4.0 * std::norm(m.m12));
        l1 = Complex{0.5 * (a + d - disc), 0.0};
        l2 = Complex{0.5 * (a + d + disc), 0.0};
    } else {
        // (a-d)^2 + 4bc is the same discriminant as tr^2 - 4det without the
        // trace cancellation, so designed double roots come out exact.
        const Complex diff = m.m11 - m.m22;
        const Complex disc = std::sqrt(diff * diff + 4.0 * m.m12 * m.m21);
        const Complex c1 = 0.5 * (tr + disc);
        const Complex c2 = 0.5 * (tr - disc);
        const Complex big = (std::abs(c1) >= std::abs(c2)) ? c1 : c2;
        // The companion root from the product keeps the small eigenvalue accurate.
        l1 = big;
        l2 = (big == Complex{}) ? Complex{} : m.det() / big;
    }
    if (std::make_pair(l2.real(), l2.imag()) < std::make_pair(l1.real(), l1.imag())) std::swap(l1, l2);
    out.values = {l1, l2};

    const double tol = 1e-14 * (1.0 + scale);
    auto eigenvector = [&](Complex lam) -> std::array<Complex, 2> {
        // Rows of (m - lam I) are (m11-lam, m12) and (m21, m22-lam); the
        // kernel direction comes from whichever row is better conditioned.
        const Complex r1a = m.m11 - lam, r1b = m.m12;
        const Complex r2a = m.m21, r2b = m.m22 - lam;
        std::array<Complex, 2> v;
        if (std::abs(r1a) + std::abs(r1b) >= std::abs(r2a) + std::abs(r2b) &&
            std::abs(r1a) + std::abs(r1b) > tol) {
            v = {-r1b, r1a};
        } else if (std::abs(r2a) + std::abs(r2b) > tol) {
            v = {-r2b, r2a};
        } else {
            return {Complex{1.0, 0.0}, Complex{}}; // scalar block: any direction
        }
        const double n = std::sqrt(std::norm(v[0]) + std::norm(v[1]));
        v[0] /= n;
        v[1] /= n;
        // Phase convention: first nonzero component on the nonnegative real axis.
        const Complex lead = (std::abs(v[0]) > 1e-14) ? v[0] : v[1];
        const Complex ph = std::conj(lead) / std::abs(lead);
        v[0] *= ph;
        v[1] *= ph;
        return v;
    };

    const bool scalar_block = std::abs(m.m12) <= tol && std::abs(m.m21) <= tol &&
                              std::abs(m.m11 - m.m22) <= tol;
    if (std::abs(l1 - l2) <= tol * 10.0 && !scalar_block) {
        out.defective = true;
        out.vectors[0] = eigenvector(l1);
        out.vectors[1] = out.vectors[0];
        return out;
    }
    if (scalar_block) {
        out.vectors[0] = {Complex{1.0, 0.0}, Complex{}};
        out.vectors[1] = {Complex{}, Complex{1.0, 0.0}};
        return out;
    }
    out.vectors[0] = eigenvector(l1);
    out.vectors[1] = eigenvector(l2);
    return out;
}

DesignParams realize_complex_symmetric(const AmplitudeRatio& r, const SpectralSpec& spec, double tol) {
    if (spec.delta == 0.0) throw Error(ErrorCode::InvalidArgument, "prescribed gap must be nonzero");
    const Complex rv = r.value;
    const Complex r2 = rv * rv;
    if (std::abs(r2.imag()) > tol * (1.0 + std::abs(r2)))
        throw Error(ErrorCode::ObstructionViolated, "r^2 not real; complex-symmetric coupling cannot hold a real spectrum here");
    if (is_degenerate_ratio(rv, tol))
        throw Error(ErrorCode::DegenerateRatio, "r = +-i: 1 + r^-2 = 0, the gap formula collapses");

    const double r2r = r2.real();
    const double tau = spec.delta / (1.0 + 1.0 / r2r);
    DesignParams p;
    p.cls = CouplingClass::ComplexSymmetric;
    p.tauA = tau;
    p.tauB = tau / r2r;
    p.lA = tau / rv;
    p.lB = p.lA;
    p.kA = Complex{spec.lambda + tau, 0.0};
    p.kB = Complex{spec.lambda + tau / r2r, 0.0};
    return p;
}

DesignParams realize_real_coupling(const AmplitudeRatio& r, const SpectralSpec& spec, double tol) {
    if (spec.delta == 0.0) throw Error(ErrorCode::InvalidArgument, "prescribed gap must be nonzero");
    const Complex rv = r.value;
    const Complex s = rv + 1.0 / rv;
    if (std::abs(s.imag()) > tol * (1.0 + std::abs(s)))
        throw Error(ErrorCode::ObstructionViolated, "r + 1/r not real; real symmetric coupling cannot hold a real spectrum here");
    if (is_degenerate_ratio(rv, tol))
        throw Error(ErrorCode::NonzeroGapImpossible, "r = +-i: the trace identity forces delta = l(r + 1/r) = 0");

    const double l = spec.delta / s.real();
    DesignParams p;
    p.cls = CouplingClass::RealSymComplexDetuning;
    p.lA = Complex{l, 0.0};
    p.lB = p.lA;
    p.kA = spec.lambda + l * rv;
    p.kB = spec.lambda + l / rv;
    p.tauA = l * rv;
    p.tauB = l / rv;
    return p;
}

DesignParams realize_hermitian(const AmplitudeRatio& r, const SpectralSpec& spec) {
    if (spec.delta == 0.0) throw Error(ErrorCode::InvalidArgument, "prescribed gap must be nonzero");
    const Complex rv = r.value;
    const double rmod2 = std::norm(rv);
    const double tau = spec.delta / (1.0 + 1.0 / rmod2);
    DesignParams p;
    p.cls = CouplingClass::Hermitian;
    p.tauA = tau;
    p.tauB = tau / rmod2;
    p.lA = tau / rv;
    p.lB = std::conj(p.lA);
    p.kA = Complex{spec.lambda + tau, 0.0};
    p.kB = Complex{spec.lambda + tau / rmod2, 0.0};
    return p;
}

DesignParams realize_hermitian_from_amplitudes(const TargetState& s, const SpectralSpec& spec) {
    if (s.is_basis()) throw Error(ErrorCode::BasisState, "amplitude-space realization needs a nonbasis state");
    if (spec.delta == 0.0) throw Error(ErrorCode::InvalidArgument, "prescribed gap must be nonzero");
    const double w1 = std::norm(s.omega1);
    const double w2 = std::norm(s.omega2);
    DesignParams p;
    p.cls = CouplingClass::Hermitian;
    p.kA = Complex{spec.lambda + spec.delta * w2, 0.0};
    p.kB = Complex{spec.lambda + spec.delta * w1, 0.0};
    p.lA = spec.delta * s.omega1 * std::conj(s.omega2);
    p.lB = std::conj(p.lA);
    p.tauA = spec.delta * w2;
    p.tauB = spec.delta * w1;
    return p;
}

DesignParams realize_asymmetric_common_k(const AmplitudeRatio& r, const SpectralSpec& spec) {
    if (spec.delta == 0.0) throw Error(ErrorCode::InvalidArgument, "prescribed gap must be nonzero");
    const double tau = 0.5 * spec.delta;
    DesignParams p;
    p.cls = CouplingClass::AsymmetricCommonK;
    p.tauA = tau;
    p.tauB = tau;
    p.kA = Complex{spec.lambda + tau, 0.0};
    p.kB = p.kA;
    p.lA = tau / r.value;
    p.lB = tau * r.value;
    return p;
}

DesignParams realize_generalized(const AmplitudeRatio& r, const SpectralSpec& spec, double tauA) {
    if (spec.delta == 0.0) throw Error(ErrorCode::InvalidArgument, "prescribed gap must be nonzero");
    const double tauB = spec.delta - tauA;
    DesignParams p;
    p.cls = CouplingClass::Generalized;
    p.tauA = tauA;
    p.tauB = tauB;
    p.lA = tauA / r.value;
    p.lB = tauB * r.value;
    p.kA = Complex{spec.lambda + tauA, 0.0};
    p.kB = Complex{spec.lambda + tauB, 0.0};
    return p;
}

DesignParams realize_zero_gap(CouplingClass cls, const AmplitudeRatio& r, double lambda,
                              double coupling, double tol) {
    if (!is_degenerate_ratio(r.value, tol))
        throw Error(ErrorCode::InvalidArgument, "zero-gap construction applies only at r = +-i");
    if (coupling == 0.0) throw Error(ErrorCode::InvalidArgument, "zero-gap coupling must be nonzero");
    const Complex rv = r.value;
    DesignParams p;
    if (cls == CouplingClass::ComplexSymmetric) {
        // l = tau/r with tau real; kA = lambda + tau, kB = lambda + tau/r^2 = lambda - tau.
        const double tau = coupling;
        p.cls = cls;
        p.tauA = tau;
        p.tauB = -tau;
        p.lA = tau / rv;
        p.lB = p.lA;
        p.kA = Complex{lambda + tau, 0.0};
        p.kB = Complex{lambda - tau, 0.0};
        return p;
    }
    if (cls == CouplingClass::RealSymComplexDetuning) {
        const double l = coupling;
        p.cls = cls;
        p.lA = Complex{l, 0.0};
        p.lB = p.lA;
        p.kA = lambda + l * rv;
        p.kB = lambda + l / rv;
        p.tauA = l * rv;
        p.tauB = l / rv;
        return p;
    }
    throw Error(ErrorCode::InvalidArgument, "zero-gap endpoints exist only in the two symmetric classes");
}

namespace {

TaxonomyVerdict verdict_from_flags(CouplingClass cls, const PhaseFlags& f, bool deg) {
    switch (cls) {
        case CouplingClass::Hermitian:
        case CouplingClass::AsymmetricCommonK:
        case CouplingClass::Generalized:
            return {Realizability::Realizable, ""};
        case CouplingClass::ComplexSymmetric:
            if (deg) return {Realizability::DegenerateOnly, "r = +-i"};
            if (f.square_real) return {Realizability::Realizable, ""};
            return {Realizability::Obstructed, "r^2 not real"};
        case CouplingClass::RealSymComplexDetuning:
            if (deg) return {Realizability::DegenerateOnly, "r = +-i"};
            if (f.sum_inverse_real) return {Realizability::Realizable, ""};
            return {Realizability::Obstructed, "r + 1/r not real"};
    }
    return {Realizability::Obstructed, "?"};
}

} // namespace

TaxonomyVerdict taxonomy_verdict(CouplingClass cls, const AmplitudeRatio& r, double tol) {
    return verdict_from_flags(cls, flags_of(r, tol), is_degenerate_ratio(r.value, tol));
}

TaxonomyVerdict taxonomy_verdict_exact(CouplingClass cls, const GaussianRational& r) {
    if (r.is_zero()) throw Error(ErrorCode::InvalidArgument, "ratio must be nonzero");
    const GaussianRational r2 = r * r;
    const bool deg = (r2 == GaussianRational(GaussianInt{-1}, GaussianInt{1}));
    return verdict_from_flags(cls, phase_classify_exact(r), deg);
}

TaxonomyVerdict taxonomy_verdict_from_square(CouplingClass cls, const GaussianRational& r2) {
    const bool deg = (r2 == GaussianRational(GaussianInt{-1}, GaussianInt{1}));
    return verdict_from_flags(cls, phase_classify_from_square(r2), deg);
}

TargetState magic_state(MagicState which) {
    if (which == MagicState::H) return TargetState(std::cos(kPi / 8.0), std::sin(kPi / 8.0));
    const double s = 1.0 / std::sqrt(2.0);
    return TargetState(Complex{s, 0.0}, std::polar(s, kPi / 4.0));
}

} // namespace qlbit
