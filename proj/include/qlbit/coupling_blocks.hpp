#pragma once

#include <optional>
#include <vector>

#include "qlbit/dense.hpp"
#include "qlbit/gaussian_int.hpp"

namespace qlbit {

enum class CouplingAlphabet { Continuous, Mu4Zero };

/// Off-diagonal coupling block. Mu4Zero blocks additionally carry their exact
/// Z[i] entries (each one of 0, +-1, +-i), so discrete checks never round.
struct CouplingBlock {
    std::size_t n = 0; // rows
    std::size_t m = 0; // cols
    Matrix entries;
    CouplingAlphabet alphabet = CouplingAlphabet::Continuous;
    std::vector<GaussianInt> exact; // n*m, populated iff alphabet == Mu4Zero

    GaussianInt exact_at(std::size_t i, std::size_t j) const { return exact[i * m + j]; }

    /// Conjugate transpose; preserves the alphabet.
    CouplingBlock adjoint_block() const;
    /// Transpose; preserves the alphabet.
    CouplingBlock transpose_block() const;

    static CouplingBlock continuous(Matrix entries);
};

/// Constant row- and column-sum scalars of an algebraically regular block,
/// plus the effective synchronized coupling l = sA * sqrt(n/m).
struct RegularityReport {
    Complex sA;
    Complex sB;
    Complex effective_l;
    double residual = 0.0;
};

/// Weighted complete bipartite coupling C = l V_A V_B^dagger: every entry is
/// l/sqrt(nm), so C V_B = l V_A and C^dagger V_A = conj(l) V_B.
CouplingBlock rank_one_coupling(Complex l, std::size_t n, std::size_t m);

/// Is l = c + di inside the balanced coupling lattice L_q = {|c|+|d| <= q}?
bool lattice_member(GaussianInt l, std::size_t q);

/// Exact balanced mu4-valued coupling with every row and column sum equal to
/// l, built from |c|+|d| disjoint perfect matchings (cyclic shifts on Z_q):
///   C = sign(c) * sum_{j<|c|} P_j + i*sign(d) * sum_{|c|<=j<|c|+|d|} P_j,
/// with sign(0) = 0 and empty sums zero. Requires l in L_q.
CouplingBlock matching_coupling(GaussianInt l, std::size_t q);

/// Row/column-sum constancy check. tol defaults to 0 (exact) for Mu4Zero
/// blocks and 1e-12 for continuous ones; pass a nonnegative tol to override.
RegularityReport algebraic_regularity(const CouplingBlock& c,
                                      std::optional<double> tol = std::nullopt);

} // namespace qlbit
