#pragma once

#include <array>

#include "qlbit/assembly.hpp"
#include "qlbit/eig.hpp"

namespace qlbit {

/// Full-operator spectrum split against the synchronized sector.
struct SpectrumReport {
    std::vector<Complex> eigenvalues;        // all n+m
    double max_imag = 0.0;                   // structurally 0 on the Hermitian path
    std::array<Complex, 2> sync_eigenvalues; // from the synchronized compression
    std::vector<Complex> perp_eigenvalues;   // spectrum of the compression to S-perp
    double collision_margin = 0.0;           // min dist sync <-> perp eigenvalues
    double max_residual = 0.0;               // max ||R v - lambda v|| over eigenpairs
};

struct LeakageReport {
    std::vector<double> times;
    std::vector<double> leakage; // ||P_{S-perp} psi(t)|| per time
    std::vector<double> norms;   // ||psi(t)|| per time
    double max_leakage = 0.0;
    bool used_expm_fallback = false;
};

/// Deterministic orthonormal basis of S-perp: within each block, the trailing
/// columns of the Householder reflector exchanging e1 with the synchronized
/// mode. (n+m) x (n+m-2).
Matrix perp_basis(std::size_t n, std::size_t m);
/// The synchronized basis as a matrix, columns ket0, ket1.
Matrix sync_basis_matrix(std::size_t n, std::size_t m);

inline constexpr std::size_t kDefaultSizeCap = 512;

/// Dense eigendecomposition of the assembled operator plus the S / S-perp
/// split. Hermitian-class operators go through the Hermitian solver, so their
/// reported spectrum is real by construction.
SpectrumReport eig_full(const BlockOperator& op, std::size_t size_cap = kDefaultSizeCap);

struct EigenpairCheck {
    double residual = 0.0;  // ||R psi - lambda psi||
    double threshold = 0.0; // tol * (1 + ||R||_F)
    bool pass = false;
};
EigenpairCheck verify_eigenpair(const BlockOperator& op, const Vector& psi, Complex lambda,
                                double tol = 1e-11);

/// Operator norms of the two cross-compressions P_{S-perp} H P_S and
/// P_S H P_{S-perp}. Both vanish exactly when S reduces the operator.
struct ReducingCheck {
    double cross_s_to_perp = 0.0;
    double cross_perp_to_s = 0.0;
};
ReducingCheck reducing_check(const BlockOperator& op);

/// min over mu in {lambda, lambda+delta}, nu in perp spectrum of |mu - nu|.
/// Small margins flag a collision; they are reported, never thrown.
double collision_check(const SpectrumReport& report, const SpectralSpec& spec);

struct EvolveInfo {
    bool used_expm_fallback = false;
    double diag_cond = 0.0;
};

/// psi(t) = e^{-itR} psi0. Hermitian class: spectral decomposition (unitary).
/// Otherwise eigendecomposition when the eigenvector basis is well
/// conditioned (cond_1 <= 1e8), else scaling-and-squaring expm, flagged.
Vector evolve(const BlockOperator& op, const Vector& psi0, double t, EvolveInfo* info = nullptr);

/// Leakage ||(I-P_S) psi(t)|| over a time grid. psi0 must lie in S within
/// 1e-12 (InitialStateNotSynchronized otherwise). The decomposition is done
/// once for the whole grid.
LeakageReport leakage_scan(const BlockOperator& op, const Vector& psi0,
                           const std::vector<double>& times);

/// The four zero-action conditions a perturbation must satisfy to leave the
/// synchronized block unchanged: ||dA V_A||, ||dB V_B||, ||dX V_B||, ||dY V_A||.
struct PerturbationCheck {
    std::array<double, 4> residuals{};
    bool preserves_sync = false;
};
PerturbationCheck perturbation_preserves_sync(const Matrix& da, const Matrix& db,
                                              const Matrix& dx, const Matrix& dy,
                                              double tol = 1e-12);

} // namespace qlbit
