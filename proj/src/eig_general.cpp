// General complex eigenproblem: Householder reduction to upper Hessenberg,
// single-shift QR with Givens rotations down to Schur form, then triangular
// back-substitution for right eigenvectors. LU, cond and the Pade-13 matrix
// exponential live here too; everything runs on the kernel layer.

#include <algorithm>
#include <cmath>
#include <limits>

#include "qlbit/eig.hpp"
#include "qlbit/errors.hpp"

namespace qlbit {

namespace {

constexpr double kEps = 2.220446049250313e-16;

struct Givens {
    double c;
    Complex s;
};

// Unitary [[c, s], [-conj(s), c]] with c real >= 0 sending (f, g) to (r, 0).
Givens make_givens(Complex f, Complex g) {
    if (g == Complex{}) return {1.0, Complex{}};
    if (f == Complex{}) return {0.0, std::conj(g) / std::abs(g)};
    const double fa = std::abs(f);
    const double t = std::sqrt(fa * fa + std::norm(g));
    return {fa / t, (f / fa) * std::conj(g) / t};
}

Complex wilkinson_shift(Complex a, Complex b, Complex c, Complex d) {
    const Complex tr = a + d;
    const Complex disc = std::sqrt(tr * tr - 4.0 * (a * d - b * c));
    const Complex l1 = 0.5 * (tr + disc);
    const Complex l2 = 0.5 * (tr - disc);
    return (std::abs(l1 - d) < std::abs(l2 - d)) ? l1 : l2;
}

void hessenberg_reduce(Matrix& h, Matrix* qt) {
    const std::size_t n = h.rows();
    const auto& kern = kernels::ops();
    std::vector<Complex> u(n), v(n), y(n);

    for (std::size_t k = 0; k + 2 < n; ++k) {
        const std::size_t len = n - k - 1;
        double sigma2 = 0.0;
        for (std::size_t i = 0; i < len; ++i) sigma2 += std::norm(h(k + 1 + i, k));
        const double sigma = std::sqrt(sigma2);
        if (sigma == 0.0) continue;
        const Complex alpha = h(k + 1, k);
        const double aab = std::abs(alpha);
        const Complex phase = (aab == 0.0) ? Complex{1.0, 0.0} : alpha / aab;
        for (std::size_t i = 0; i < len; ++i) u[i] = h(k + 1 + i, k);
        u[0] += phase * sigma;
        const double beta = 1.0 / (sigma * (sigma + aab)); // 2 / u^dagger u

        // Left update rows k+1..: H <- P H, via v = beta (u^dagger H).
        std::fill(v.begin(), v.end(), Complex{});
        for (std::size_t i = 0; i < len; ++i)
            kern.axpy(n - k, beta * std::conj(u[i]), h.row(k + 1 + i) + k, v.data());
        for (std::size_t i = 0; i < len; ++i)
            kern.axpy(n - k, -u[i], v.data(), h.row(k + 1 + i) + k);

        // Right update columns k+1..: H <- H P.
        for (std::size_t r = 0; r < n; ++r) {
            const Complex yr = beta * kern.dotu(len, h.row(r) + (k + 1), u.data());
            kern.axpy_conj(len, -yr, u.data(), h.row(r) + (k + 1));
        }

        if (qt) {
            // Accumulate Q^dagger rows: Q <- Q P  <=>  QT <- P QT.
            std::fill(y.begin(), y.end(), Complex{});
            for (std::size_t i = 0; i < len; ++i)
                kern.axpy(n, beta * std::conj(u[i]), qt->row(k + 1 + i), y.data());
            for (std::size_t i = 0; i < len; ++i)
                kern.axpy(n, -u[i], y.data(), qt->row(k + 1 + i));
        }

        // The annihilated column, exactly.
        h(k + 1, k) = -phase * sigma;
        for (std::size_t i = 1; i < len; ++i) h(k + 1 + i, k) = Complex{};
    }
}

// Shifted QR on a Hessenberg matrix in place; rotations also applied to qt
// (rows of Q^dagger) when present. On return h is upper triangular.
void hessenberg_qr(Matrix& h, Matrix* qt) {
    const std::size_t n = h.rows();
    if (n < 2) return;
    const auto& kern = kernels::ops();
    const double hnorm = std::max(frobenius_norm(h), 1e-300);

    std::size_t hi = n - 1;
    int iter_here = 0;
    long total_iter = 0;
    const long max_total = 60 * static_cast<long>(n);

    auto negligible = [&](std::size_t i) {
        const double scale = std::abs(h(i - 1, i - 1)) + std::abs(h(i, i));
        return std::abs(h(i, i - 1)) <= kEps * (scale > 0.0 ? scale : hnorm);
    };

    while (hi > 0) {
        // Deflate converged tail entries.
        if (negligible(hi)) {
            h(hi, hi - 1) = Complex{};
            --hi;
            iter_here = 0;
            continue;
        }
        std::size_t lo = hi;
        while (lo > 0 && !negligible(lo)) --lo;
        if (lo > 0) h(lo, lo - 1) = Complex{};

        if (++total_iter > max_total) throw Error(ErrorCode::SolverFailure, "QR iteration did not converge");
        Complex mu;
        if (++iter_here % 14 == 0) {
            // Exceptional shift breaks rare symmetric stalls.
            mu = h(hi, hi) + Complex{0.75 * std::abs(h(hi, hi - 1)), 0.0};
        } else {
            mu = wilkinson_shift(h(hi - 1, hi - 1), h(hi - 1, hi), h(hi, hi - 1), h(hi, hi));
        }

        Complex x = h(lo, lo) - mu;
        Complex y = h(lo + 1, lo);
        for (std::size_t i = lo; i < hi; ++i) {
            const Givens g = make_givens(x, y);
            const Complex sc = std::conj(g.s);
            const std::size_t jstart = (i == lo) ? lo : i - 1;

            // Left: rows i, i+1 over columns jstart..n-1 (contiguous).
            kern.rot(n - jstart, h.row(i) + jstart, h.row(i + 1) + jstart, g.c, g.s);
            // Right: columns i, i+1 over rows 0..min(i+2, hi).
            const std::size_t rmax = std::min(i + 2, hi);
            for (std::size_t r = 0; r <= rmax; ++r) {
                const Complex a1 = h(r, i);
                const Complex a2 = h(r, i + 1);
                h(r, i) = g.c * a1 + sc * a2;
                h(r, i + 1) = -g.s * a1 + g.c * a2;
            }
            if (qt) kern.rot(n, qt->row(i), qt->row(i + 1), g.c, g.s);

            if (i + 1 < hi) {
                x = h(i + 1, i);
                y = h(i + 2, i);
            }
        }
    }
    // Clean the strictly lower triangle.
    for (std::size_t i = 1; i < n; ++i)
        for (std::size_t j = 0; j < i; ++j) h(i, j) = Complex{};
}

} // namespace

SchurResult schur_decompose(Matrix a, bool want_q) {
    const std::size_t n = a.rows();
    if (a.cols() != n) throw Error(ErrorCode::DimensionMismatch, "schur needs a square matrix");
    SchurResult out;
    Matrix qt;
    if (want_q) qt = Matrix::identity(n);
    if (n > 1) {
        hessenberg_reduce(a, want_q ? &qt : nullptr);
        hessenberg_qr(a, want_q ? &qt : nullptr);
    }
    out.values.resize(n);
    for (std::size_t i = 0; i < n; ++i) out.values[i] = a(i, i);
    out.t = std::move(a);
    if (want_q) out.q = adjoint(qt);
    return out;
}

std::vector<Complex> general_eigenvalues(const Matrix& a) {
    return schur_decompose(a, false).values;
}

GeneralEig eig_general(const Matrix& a) {
    const std::size_t n = a.rows();
    SchurResult s = schur_decompose(a, true);
    GeneralEig out;
    out.values = s.values;
    out.vectors = Matrix(n, n);

    const double tnorm = std::max(frobenius_norm(s.t), 1e-300);
    const double smin = kEps * tnorm;
    Vector x(n);
    for (std::size_t j = 0; j < n; ++j) {
        const Complex lam = s.t(j, j);
        std::fill(x.begin(), x.end(), Complex{});
        x[j] = 1.0;
        for (std::size_t k1 = j; k1-- > 0;) {
            Complex acc{};
            for (std::size_t m = k1 + 1; m <= j; ++m) acc += s.t(k1, m) * x[m];
            Complex den = lam - s.t(k1, k1);
            if (std::abs(den) < smin) den = Complex{smin, 0.0};
            x[k1] = acc / den;
            if (std::abs(x[k1]) > 1e120) {
                for (std::size_t m = k1; m <= j; ++m) x[m] *= 1e-120;
            }
        }
        Vector v = matvec(s.q, x);
        v = normalized(std::move(v));
        for (std::size_t r = 0; r < n; ++r) out.vectors(r, j) = v[r];
    }
    return out;
}

LuFactors lu_factor(Matrix a) {
    const std::size_t n = a.rows();
    if (a.cols() != n) throw Error(ErrorCode::DimensionMismatch, "lu needs a square matrix");
    LuFactors f;
    f.piv.resize(n);
    const auto& kern = kernels::ops();
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t p = k;
        double best = std::abs(a(k, k));
        for (std::size_t i = k + 1; i < n; ++i) {
            const double v = std::abs(a(i, k));
            if (v > best) {
                best = v;
                p = i;
            }
        }
        f.piv[k] = p;
        if (best == 0.0) {
            f.singular = true;
            continue;
        }
        if (p != k)
            for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(p, j));
        const Complex inv = 1.0 / a(k, k);
        for (std::size_t i = k + 1; i < n; ++i) {
            const Complex m = a(i, k) * inv;
            a(i, k) = m;
            if (m != Complex{}) kern.axpy(n - k - 1, -m, a.row(k) + k + 1, a.row(i) + k + 1);
        }
    }
    f.lu = std::move(a);
    return f;
}

Vector lu_solve(const LuFactors& f, Vector b) {
    const std::size_t n = f.lu.rows();
    if (b.size() != n) throw Error(ErrorCode::DimensionMismatch, "lu_solve rhs size");
    if (f.singular) throw Error(ErrorCode::SolverFailure, "singular matrix in lu_solve");
    for (std::size_t k = 0; k < n; ++k) std::swap(b[k], b[f.piv[k]]);
    for (std::size_t i = 1; i < n; ++i) {
        Complex acc{};
        for (std::size_t j = 0; j < i; ++j) acc += f.lu(i, j) * b[j];
        b[i] -= acc;
    }
    for (std::size_t i = n; i-- > 0;) {
        Complex acc{};
        for (std::size_t j = i + 1; j < n; ++j) acc += f.lu(i, j) * b[j];
        b[i] = (b[i] - acc) / f.lu(i, i);
    }
    return b;
}

Matrix lu_solve(const LuFactors& f, Matrix b) {
    const std::size_t n = f.lu.rows();
    if (b.rows() != n) throw Error(ErrorCode::DimensionMismatch, "lu_solve rhs rows");
    if (f.singular) throw Error(ErrorCode::SolverFailure, "singular matrix in lu_solve");
    const auto& kern = kernels::ops();
    for (std::size_t k = 0; k < n; ++k)
        if (f.piv[k] != k)
            for (std::size_t j = 0; j < b.cols(); ++j) std::swap(b(k, j), b(f.piv[k], j));
    for (std::size_t i = 1; i < n; ++i)
        for (std::size_t j = 0; j < i; ++j)
            if (f.lu(i, j) != Complex{}) kern.axpy(b.cols(), -f.lu(i, j), b.row(j), b.row(i));
    for (std::size_t i = n; i-- > 0;) {
        for (std::size_t j = i + 1; j < n; ++j)
            if (f.lu(i, j) != Complex{}) kern.axpy(b.cols(), -f.lu(i, j), b.row(j), b.row(i));
        kern.scal(b.cols(), 1.0 / f.lu(i, i), b.row(i));
    }
    return b;
}

Matrix inverse(const Matrix& a) { return lu_solve(lu_factor(a), Matrix::identity(a.rows())); }

double cond1(const Matrix& a) {
    const LuFactors f = lu_factor(a);
    if (f.singular) return std::numeric_limits<double>::infinity();
    const Matrix inv = lu_solve(f, Matrix::identity(a.rows()));
    return one_norm(a) * one_norm(inv);
}

Matrix expm(const Matrix& a) {
    const std::size_t n = a.rows();
    if (a.cols() != n) throw Error(ErrorCode::DimensionMismatch, "expm needs a square matrix");
    static const double b[] = {64764752532480000.0, 32382376266240000.0, 7771770303897600.0,
                               1187353796428800.0,  129060195264000.0,   10559470521600.0,
                               670442572800.0,      33522128640.0,       1323241920.0,
                               40840800.0,          960960.0,            16380.0,
                               182.0,               1.0};
    const double theta13 = 5.371920351148152;

    const double nrm = one_norm(a);
    int s = 0;
    if (nrm > theta13) s = static_cast<int>(std::ceil(std::log2(nrm / theta13)));
    Matrix as = a;
    if (s > 0) as *= Complex{std::ldexp(1.0, -s), 0.0};

    const Matrix id = Matrix::identity(n);
    const Matrix a2 = matmul(as, as);
    const Matrix a4 = matmul(a2, a2);
    const Matrix a6 = matmul(a2, a4);

    Matrix w1 = a6 * Complex{b[13]} + a4 * Complex{b[11]} + a2 * Complex{b[9]};
    Matrix w2 = a6 * Complex{b[7]} + a4 * Complex{b[5]} + a2 * Complex{b[3]} + id * Complex{b[1]};
    Matrix u = matmul(as, matmul(a6, w1) + w2);

    Matrix z1 = a6 * Complex{b[12]} + a4 * Complex{b[10]} + a2 * Complex{b[8]};
    Matrix v = matmul(a6, z1) + a6 * Complex{b[6]} + a4 * Complex{b[4]} + a2 * Complex{b[2]} + id * Complex{b[0]};

    Matrix num = v + u;
    Matrix den = v - u;
    Matrix x = lu_solve(lu_factor(std::move(den)), std::move(num));
    for (int i = 0; i < s; ++i) x = matmul(x, x);
    return x;
}

} // namespace qlbit
