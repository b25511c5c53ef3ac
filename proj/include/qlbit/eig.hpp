#pragma once

#include "qlbit/dense.hpp"

namespace qlbit {

/// Eigendecomposition of a Hermitian matrix: real eigenvalues ascending,
/// unitary eigenvector matrix (columns). Only the Hermitian part of the input
/// is referenced, so real output is a structural guarantee, not a tolerance.
struct HermitianEig {
    std::vector<double> values;
    Matrix vectors; // column j pairs with values[j]
};
HermitianEig eig_hermitian(const Matrix& a, bool want_vectors = true);

/// Complex Schur decomposition a = Q T Q^dagger with T upper triangular.
struct SchurResult {
    Matrix t;
    Matrix q; // empty when not requested
    std::vector<Complex> values;
};
SchurResult schur_decompose(Matrix a, bool want_q = true);

/// Eigenvalues of a general complex matrix (Schur, no vectors).
std::vector<Complex> general_eigenvalues(const Matrix& a);

/// Eigenvalues plus right eigenvectors of a general matrix, via Schur +
/// triangular back-substitution. For defective matrices the returned columns
/// can be (nearly) dependent; callers guard with cond1 before trusting them.
struct GeneralEig {
    std::vector<Complex> values;
    Matrix vectors;
};
GeneralEig eig_general(const Matrix& a);

struct LuFactors {
    Matrix lu;
    std::vector<std::size_t> piv;
    bool singular = false;
};
LuFactors lu_factor(Matrix a);
Vector lu_solve(const LuFactors& f, Vector b);
Matrix lu_solve(const LuFactors& f, Matrix b);
Matrix inverse(const Matrix& a);

/// ||A||_1 * ||A^{-1}||_1; infinity when singular.
double cond1(const Matrix& a);

/// Matrix exponential, Pade-13 with scaling and squaring.
Matrix expm(const Matrix& a);

} // namespace qlbit
