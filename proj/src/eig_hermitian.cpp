// Hermitian eigensolver: complex Householder tridiagonalization, unitary
// phase scaling to a real symmetric tridiagonal, then implicit QL with
// Wilkinson shifts accumulating the transform into the eigenvector matrix.

#include <algorithm>
#include <cmath>
#include <numeric>

#include "qlbit/eig.hpp"
#include "qlbit/errors.hpp"

namespace qlbit {

namespace {

constexpr double kEps = 2.220446049250313e-16;

/// Implicit-shift QL on a real symmetric tridiagonal (d, e). Rotations are
/// applied to the rows of zt, which holds the transposed eigenvector matrix
/// so each rotation runs on two contiguous rows.
void tql_implicit(std::vector<double>& d, std::vector<double>& e, Matrix& zt) {
    const std::size_t n = d.size();
    if (n == 0) return;
    e[n - 1] = 0.0;
    const auto& kern = kernels::ops();

    for (std::size_t l = 0; l < n; ++l) {
        int iter = 0;
        std::size_t m;
        do {
            for (m = l; m + 1 < n; ++m) {
                const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
                if (std::abs(e[m]) <= kEps * dd) break;
            }
            if (m != l) {
                if (iter++ == 60) throw Error(ErrorCode::SolverFailure, "tridiagonal QL did not converge");
                double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
                double r = std::hypot(g, 1.0);
                g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
                double s = 1.0, c = 1.0, p = 0.0;
                bool underflow = false;
                for (std::size_t i1 = m; i1-- > l;) {
                    double f = s * e[i1];
                    const double b = c * e[i1];
                    r = std::hypot(f, g);
                    e[i1 + 1] = r;
                    if (r == 0.0) {
                        d[i1 + 1] -= p;
                        e[m] = 0.0;
                        underflow = true;
                        break;
                    }
                    s = f / r;
                    c = g / r;
                    g = d[i1 + 1] - p;
                    r = (d[i1] - g) * s + 2.0 * c * b;
                    p = s * r;
                    d[i1 + 1] = g + p;
                    g = c * r - b;
                    if (!zt.empty()) kern.rot(n, zt.row(i1), zt.row(i1 + 1), c, Complex{-s, 0.0});
                }
                if (underflow) continue;
                d[l] -= p;
                e[l] = g;
                e[m] = 0.0;
            }
        } while (m != l);
    }
}

} // namespace

HermitianEig eig_hermitian(const Matrix& a, bool want_vectors) {
    const std::size_t n = a.rows();
    if (a.cols() != n) throw Error(ErrorCode::DimensionMismatch, "eig_hermitian needs a square matrix");

    // Only the Hermitian part is referenced.
    Matrix w(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        w(i, i) = Complex{a(i, i).real(), 0.0};
        for (std::size_t j = i + 1; j < n; ++j) {
            const Complex v = 0.5 * (a(i, j) + std::conj(a(j, i)));
            w(i, j) = v;
            w(j, i) = std::conj(v);
        }
    }

    HermitianEig out;
    out.values.assign(n, 0.0);
    if (n == 0) return out;
    if (n == 1) {
        out.values[0] = w(0, 0).real();
        if (want_vectors) out.vectors = Matrix::identity(1);
        return out;
    }

    const auto& kern = kernels::ops();
    Matrix q = want_vectors ? Matrix::identity(n) : Matrix();
    std::vector<Complex> esub(n, Complex{});
    std::vector<Complex> u(n);
    std::vector<Complex> p(n);
    std::vector<Complex> y(n);

    // Householder tridiagonalization, column by column.
    for (std::size_t k = 0; k + 2 < n; ++k) {
        const std::size_t len = n - k - 1;
        double sigma2 = 0.0;
        for (std::size_t i = 0; i < len; ++i) sigma2 += std::norm(w(k + 1 + i, k));
        const double sigma = std::sqrt(sigma2);
        const Complex alpha = w(k + 1, k);
        if (sigma == 0.0) {
            esub[k] = Complex{};
            continue;
        }
        const double aab = std::abs(alpha);
        const Complex phase = (aab == 0.0) ? Complex{1.0, 0.0} : alpha / aab;
        for (std::size_t i = 0; i < len; ++i) u[i] = w(k + 1 + i, k);
        u[0] += phase * sigma;
        const double beta = 1.0 / (sigma * (sigma + aab)); // 2 / u^dagger u

        // p = beta * B u on the trailing block B = w(k+1.., k+1..).
        for (std::size_t i = 0; i < len; ++i)
            p[i] = beta * kern.dotu(len, w.row(k + 1 + i) + (k + 1), u.data());
        // kconst = beta/2 * u^dagger p (real since B is Hermitian).
        const Complex updot = kern.dotc(len, u.data(), p.data());
        const double kconst = 0.5 * beta * updot.real();
        // ws = p - kconst u; B -= u ws^dagger + ws u^dagger.
        for (std::size_t i = 0; i < len; ++i) p[i] -= kconst * u[i];
        for (std::size_t i = 0; i < len; ++i) {
            Complex* rowi = w.row(k + 1 + i) + (k + 1);
            kern.axpy_conj(len, -u[i], p.data(), rowi);
            kern.axpy_conj(len, -p[i], u.data(), rowi);
        }

        esub[k] = -phase * sigma;
        w(k + 1, k) = esub[k];
        w(k, k + 1) = std::conj(esub[k]);
        for (std::size_t i = 1; i < len; ++i) {
            w(k + 1 + i, k) = Complex{};
            w(k, k + 1 + i) = Complex{};
        }

        if (want_vectors) {
            // q <- q (I - beta u u^dagger), rows updated in place.
            for (std::size_t r = 0; r < n; ++r) y[r] = kern.dotu(len, q.row(r) + (k + 1), u.data());
            for (std::size_t r = 0; r < n; ++r)
                kern.axpy_conj(len, -beta * y[r], u.data(), q.row(r) + (k + 1));
        }
    }
    esub[n - 2] = w(n - 1, n - 2);

    // Diagonal phase scaling makes the subdiagonal real nonnegative.
    std::vector<double> d(n), e(n, 0.0);
    std::vector<Complex> phi(n, Complex{1.0, 0.0});
    for (std::size_t i = 0; i < n; ++i) d[i] = w(i, i).real();
    for (std::size_t k = 0; k + 1 < n; ++k) {
        const double mag = std::abs(esub[k]);
        e[k] = mag;
        phi[k + 1] = (mag == 0.0) ? phi[k] : phi[k] * (esub[k] / mag);
    }
    Matrix zt; // transposed eigenvectors: row j of zt is eigenvector j
    if (want_vectors) {
        zt = Matrix(n, n);
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t r = 0; r < n; ++r) zt(j, r) = q(r, j) * phi[j];
    }

    tql_implicit(d, e, zt);

    // Ascending order.
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::sort(perm.begin(), perm.end(), [&](std::size_t i, std::size_t j) { return d[i] < d[j]; });

    HermitianEig res;
    res.values.resize(n);
    for (std::size_t j = 0; j < n; ++j) res.values[j] = d[perm[j]];
    if (want_vectors) {
        res.vectors = Matrix(n, n);
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t r = 0; r < n; ++r) res.vectors(r, j) = zt(perm[j], r);
    }
    return res;
}

} // namespace qlbit
