#pragma once

#include <array>
#include <string>

#include "qlbit/complex_scalar.hpp"

namespace qlbit {

/// The coupling classes of the reduced two-level model. The first two place
/// the complex freedom symmetrically and realize only restricted ratio sets;
/// Hermitian and asymmetric/generalized coupling realize all of C^x.
enum class CouplingClass {
    ComplexSymmetric,       // kA, kB real, lA = lB complex
    RealSymComplexDetuning, // lA = lB real, kA, kB complex
    Hermitian,              // kA, kB real, lB = conj(lA)
    AsymmetricCommonK,      // kA = kB, lA and lB independent
    Generalized,            // everything independent
};

const char* to_string(CouplingClass c);

/// Target spectral data: the designed eigenvalue lambda and the signed offset
/// delta placing the second synchronized eigenvalue at lambda + delta.
struct SpectralSpec {
    double lambda = 0.0;
    double delta = 1.0;
};

/// Effective scalars of a reduced design. tauA/tauB record the split
/// tau_A + tau_B = delta where the construction defines one (for the single-tau
/// classes tauA holds tau and tauB the complementary part of the gap).
struct DesignParams {
    CouplingClass cls = CouplingClass::Hermitian;
    Complex kA;
    Complex kB;
    Complex lA;
    Complex lB;
    Complex tauA;
    Complex tauB;

    /// Throws ClassInvariantViolation when the class-dependent relations fail.
    void validate(double tol = kRealityTol) const;
};

/// The reduced 2x2 block ((kA, -lA), (-lB, kB)).
struct EffectiveBlock {
    Complex m11, m12, m21, m22;

    double frob() const;
    Complex trace() const { return m11 + m22; }
    Complex det() const { return m11 * m22 - m12 * m21; }

    /// Block applied to (v1, v2).
    std::array<Complex, 2> apply(Complex v1, Complex v2) const {
        return {m11 * v1 + m12 * v2, m21 * v1 + m22 * v2};
    }

    bool hermitian(double tol = 1e-12) const;
};

/// Reduced block of a validated parameter set.
EffectiveBlock reduce(const DesignParams& p);

/// Closed-form 2x2 eigenpairs. Eigenvalues ordered ascending by (Re, Im);
/// eigenvectors unit norm with the first nonzero component rotated to the
/// nonnegative real axis. A repeated eigenvalue on a non-scalar block marks
/// the result defective: both vector slots then hold the single eigenvector.
struct Eig2 {
    std::array<Complex, 2> values;
    std::array<std::array<Complex, 2>, 2> vectors; // vectors[j] pairs with values[j]
    bool defective = false;
};
Eig2 eig2(const EffectiveBlock& m);

/// Realizations. Each returns parameters whose reduced block has eigenpair
/// (lambda, (1, r)) and second eigenvalue lambda + delta.
DesignParams realize_complex_symmetric(const AmplitudeRatio& r, const SpectralSpec& spec,
                                       double tol = kRealityTol);
DesignParams realize_real_coupling(const AmplitudeRatio& r, const SpectralSpec& spec,
                                   double tol = kRealityTol);
DesignParams realize_hermitian(const AmplitudeRatio& r, const SpectralSpec& spec);
DesignParams realize_hermitian_from_amplitudes(const TargetState& s, const SpectralSpec& spec);
DesignParams realize_asymmetric_common_k(const AmplitudeRatio& r, const SpectralSpec& spec);
DesignParams realize_generalized(const AmplitudeRatio& r, const SpectralSpec& spec, double tauA);

/// The degenerate r = +-i endpoints of the two symmetric classes: both
/// synchronized eigenvalues sit at lambda (zero gap). Exposed separately so
/// the prescribed-gap entry points never silently return one. `coupling` is
/// tau for ComplexSymmetric and l for RealSymComplexDetuning, any nonzero real.
DesignParams realize_zero_gap(CouplingClass cls, const AmplitudeRatio& r, double lambda,
                              double coupling = 1.0, double tol = kRealityTol);

enum class Realizability { Realizable, Obstructed, DegenerateOnly };

struct TaxonomyVerdict {
    Realizability kind;
    std::string locus; // names the violated locus when Obstructed
};

/// Which nonbasis ratios each class realizes with a prescribed nonzero gap.
TaxonomyVerdict taxonomy_verdict(CouplingClass cls, const AmplitudeRatio& r,
                                 double tol = kRealityTol);
/// Exact-arithmetic verdict for ratios in Q(i).
TaxonomyVerdict taxonomy_verdict_exact(CouplingClass cls, const GaussianRational& r);
/// Exact verdict when only r^2 is known exactly (covers e.g. r = e^{i pi/4}).
TaxonomyVerdict taxonomy_verdict_from_square(CouplingClass cls, const GaussianRational& r_squared);

enum class MagicState { H, T };

/// |H> = cos(pi/8)|0> + sin(pi/8)|1>,  |T> = (|0> + e^{i pi/4}|1>)/sqrt(2).
TargetState magic_state(MagicState which);

} // namespace qlbit
