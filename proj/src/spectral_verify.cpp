#include "qlbit/spectral_verify.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "qlbit/errors.hpp"

namespace qlbit {

namespace {

// Orthonormal completion of the normalized all-ones vector in dimension q:
// columns 2..q of the Householder reflector I - 2 u u^T / (u^T u), u = e1 - V.
// The reflector is symmetric orthogonal with first column V.
void fill_block_completion(Matrix& w, std::size_t row0, std::size_t col0, std::size_t q) {
    if (q < 2) return;
    const double v = 1.0 / std::sqrt(double(q));
    const double u1 = 1.0 - v;
    const double utu = 2.0 * (1.0 - v);
    for (std::size_t j = 1; j < q; ++j) {
        const double uj = -v;
        for (std::size_t i = 0; i < q; ++i) {
            const double ui = (i == 0) ? u1 : -v;
            const double e = (i == j) ? 1.0 : 0.0;
            w(row0 + i, col0 + (j - 1)) = e - 2.0 * ui * uj / utu;
        }
    }
}

// sigma_max of a matrix with at most two columns, via the 2x2 Gram matrix.
double two_col_opnorm(const Matrix& b) {
    if (b.cols() == 0 || b.rows() == 0) return 0.0;
    Complex g11{}, g12{}, g22{};
    for (std::size_t i = 0; i < b.rows(); ++i) {
        g11 += std::conj(b(i, 0)) * b(i, 0);
        if (b.cols() > 1) {
            g12 += std::conj(b(i, 0)) * b(i, 1);
            g22 += std::conj(b(i, 1)) * b(i, 1);
        }
    }
    if (b.cols() == 1) return std::sqrt(g11.real());
    const double tr = g11.real() + g22.real();
    const double diff = g11.real() - g22.real();
    const double disc = std::sqrt(diff * diff + 4.0 * std::norm(g12));
    return std::sqrt(std::max(0.0, 0.5 * (tr + disc)));
}

double max_eigen_residual(const Matrix& r, const std::vector<Complex>& vals, const Matrix& vecs) {
    // ||R V - V diag(vals)||, columnwise max.
    const Matrix rv = matmul(r, vecs);
    double worst = 0.0;
    for (std::size_t j = 0; j < vals.size(); ++j) {
        double acc = 0.0;
        for (std::size_t i = 0; i < r.rows(); ++i) acc += std::norm(rv(i, j) - vals[j] * vecs(i, j));
        worst = std::max(worst, std::sqrt(acc));
    }
    return worst;
}

std::vector<Complex> to_complex_vec(const std::vector<double>& v) {
    std::vector<Complex> out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = Complex{v[i], 0.0};
    return out;
}

struct Propagator {
    bool hermitian = false;
    bool expm_mode = false;
    Matrix vectors;       // eigenvector columns (diagonalizable paths)
    Matrix vectors_inv;   // general path only
    std::vector<Complex> values;
    const Matrix* full = nullptr; // expm path
    double cond = 0.0;

    static Propagator build(const BlockOperator& op) {
        Propagator p;
        p.full = &op.full;
        if (op.hermitian_class()) {
            p.hermitian = true;
            HermitianEig h = eig_hermitian(op.full);
            p.values = to_complex_vec(h.values);
            p.vectors = std::move(h.vectors);
            return p;
        }
        GeneralEig g = eig_general(op.full);
        const double cnd = cond1(g.vectors);
        p.cond = cnd;
        // Diagonalization-path error scales like eps * cond(V); past ~1/sqrt(eps)
        // the basis is defective territory and expm takes over.
        if (!std::isfinite(cnd) || cnd > 1e8) {
            p.expm_mode = true;
            return p;
        }
        p.values = std::move(g.values);
        p.vectors_inv = inverse(g.vectors);
        p.vectors = std::move(g.vectors);
        return p;
    }

    Vector apply(const Vector& psi0, double t) const {
        if (expm_mode) {
            Matrix gen = *full;
            gen *= Complex{0.0, -t};
            return matvec(expm(gen), psi0);
        }
        Vector c = hermitian ? matvec_adjoint(vectors, psi0) : matvec(vectors_inv, psi0);
        for (std::size_t j = 0; j < c.size(); ++j)
            c[j] *= std::exp(Complex{0.0, -t} * values[j]);
        return matvec(vectors, c);
    }
};

} // namespace

Matrix perp_basis(std::size_t n, std::size_t m) {
    Matrix w(n + m, (n - 1) + (m - 1));
    fill_block_completion(w, 0, 0, n);
    fill_block_completion(w, n, n - 1, m);
    return w;
}

Matrix sync_basis_matrix(std::size_t n, std::size_t m) {
    const SynchronizedBasis b = SynchronizedBasis::make(n, m);
    Matrix u(n + m, 2);
    for (std::size_t i = 0; i < n + m; ++i) {
        u(i, 0) = b.ket0[i];
        u(i, 1) = b.ket1[i];
    }
    return u;
}

SpectrumReport eig_full(const BlockOperator& op, std::size_t size_cap) {
    const std::size_t dim = op.n + op.m;
    if (dim > size_cap)
        throw Error(ErrorCode::SizeCapExceeded,
                    "operator dimension " + std::to_string(dim) + " exceeds cap " + std::to_string(size_cap));

    SpectrumReport rep;
    const Matrix w = perp_basis(op.n, op.m);
    const Matrix compressed =
        (w.cols() > 0) ? matmul(adjoint(w), matmul(op.full, w)) : Matrix(0, 0);

    if (op.hermitian_class()) {
        HermitianEig h = eig_hermitian(op.full);
        rep.eigenvalues = to_complex_vec(h.values);
        rep.max_imag = 0.0;
        rep.max_residual = max_eigen_residual(op.full, rep.eigenvalues, h.vectors);
        if (compressed.rows() > 0)
            rep.perp_eigenvalues = to_complex_vec(eig_hermitian(compressed, false).values);
        // The Hermitian solver owes tight residuals; a violation is a bug.
        if (rep.max_residual > 1e-10 * std::max(1.0, frobenius_norm(op.full)))
            throw Error(ErrorCode::SolverFailure,
                        "eigenpair residual " + std::to_string(rep.max_residual) + " out of contract");
    } else {
        GeneralEig g = eig_general(op.full);
        rep.eigenvalues = g.values;
        for (const Complex& v : g.values) rep.max_imag = std::max(rep.max_imag, std::abs(v.imag()));
        // Defective operators have no eigenbasis; the residual is reported,
        // not enforced, on the general path.
        rep.max_residual = max_eigen_residual(op.full, rep.eigenvalues, g.vectors);
        if (compressed.rows() > 0) rep.perp_eigenvalues = general_eigenvalues(compressed);
    }

    const Eig2 sync = eig2(restrict_to_sync(op).block);
    rep.sync_eigenvalues = sync.values;

    rep.collision_margin = std::numeric_limits<double>::infinity();
    for (const Complex& mu : rep.sync_eigenvalues)
        for (const Complex& nu : rep.perp_eigenvalues)
            rep.collision_margin = std::min(rep.collision_margin, std::abs(mu - nu));
    return rep;
}

EigenpairCheck verify_eigenpair(const BlockOperator& op, const Vector& psi, Complex lambda,
                                double tol) {
    if (psi.size() != op.n + op.m)
        throw Error(ErrorCode::DimensionMismatch, "state dimension mismatch");
    if (std::abs(vec_norm(psi) - 1.0) > 1e-12)
        throw Error(ErrorCode::InvalidArgument, "state must be normalized");
    Vector r = matvec(op.full, psi);
    kernels::ops().axpy(r.size(), -lambda, psi.data(), r.data());
    EigenpairCheck out;
    out.residual = vec_norm(r);
    out.threshold = tol * (1.0 + frobenius_norm(op.full));
    out.pass = out.residual <= out.threshold;
    return out;
}

ReducingCheck reducing_check(const BlockOperator& op) {
    const Matrix u = sync_basis_matrix(op.n, op.m);
    const Matrix w = perp_basis(op.n, op.m);
    ReducingCheck out;
    if (w.cols() == 0) return out;
    const Matrix hu = matmul(op.full, u);
    const Matrix hw = matmul(op.full, w);
    out.cross_s_to_perp = two_col_opnorm(matmul(adjoint(w), hu));
    // U^dagger H W has two rows; its norm equals the norm of its adjoint.
    out.cross_perp_to_s = two_col_opnorm(adjoint(matmul(adjoint(u), hw)));
    return out;
}

double collision_check(const SpectrumReport& report, const SpectralSpec& spec) {
    double margin = std::numeric_limits<double>::infinity();
    const Complex targets[2] = {Complex{spec.lambda, 0.0}, Complex{spec.lambda + spec.delta, 0.0}};
    for (const Complex& mu : targets)
        for (const Complex& nu : report.perp_eigenvalues) margin = std::min(margin, std::abs(mu - nu));
    return margin;
}

Vector evolve(const BlockOperator& op, const Vector& psi0, double t, EvolveInfo* info) {
    if (psi0.size() != op.n + op.m)
        throw Error(ErrorCode::DimensionMismatch, "state dimension mismatch");
    if (std::abs(vec_norm(psi0) - 1.0) > 1e-12)
        throw Error(ErrorCode::InvalidArgument, "initial state must be normalized");
    const Propagator p = Propagator::build(op);
    if (info) {
        info->used_expm_fallback = p.expm_mode;
        info->diag_cond = p.cond;
    }
    return p.apply(psi0, t);
}

LeakageReport leakage_scan(const BlockOperator& op, const Vector& psi0,
                           const std::vector<double>& times) {
    if (psi0.size() != op.n + op.m)
        throw Error(ErrorCode::DimensionMismatch, "state dimension mismatch");
    const SynchronizedBasis basis = SynchronizedBasis::make(op.n, op.m);

    auto perp_part = [&](const Vector& v) {
        Vector d = v;
        const Complex c0 = vdot(basis.ket0, v);
        const Complex c1 = vdot(basis.ket1, v);
        kernels::ops().axpy(d.size(), -c0, basis.ket0.data(), d.data());
        kernels::ops().axpy(d.size(), -c1, basis.ket1.data(), d.data());
        return vec_norm(d);
    };

    if (perp_part(psi0) > 1e-12)
        throw Error(ErrorCode::InitialStateNotSynchronized,
                    "initial state has nonsynchronized component");

    const Propagator p = Propagator::build(op);
    LeakageReport rep;
    rep.times = times;
    rep.used_expm_fallback = p.expm_mode;
    for (double t : times) {
        const Vector psi = p.apply(psi0, t);
        const double leak = perp_part(psi);
        rep.leakage.push_back(leak);
        rep.norms.push_back(vec_norm(psi));
        rep.max_leakage = std::max(rep.max_leakage, leak);
    }
    return rep;
}

PerturbationCheck perturbation_preserves_sync(const Matrix& da, const Matrix& db,
                                              const Matrix& dx, const Matrix& dy, double tol) {
    const std::size_t n = da.rows();
    const std::size_t m = db.rows();
    if (da.cols() != n || db.cols() != m || dx.rows() != n || dx.cols() != m || dy.rows() != m ||
        dy.cols() != n)
        throw Error(ErrorCode::DimensionMismatch, "perturbation block shapes are inconsistent");

    const Vector va(n, Complex{1.0 / std::sqrt(double(n)), 0.0});
    const Vector vb(m, Complex{1.0 / std::sqrt(double(m)), 0.0});

    PerturbationCheck out;
    out.residuals[0] = vec_norm(matvec(da, va));
    out.residuals[1] = vec_norm(matvec(db, vb));
    out.residuals[2] = vec_norm(matvec(dx, vb));
    out.residuals[3] = vec_norm(matvec(dy, va));
    out.preserves_sync = true;
    for (double r : out.residuals) out.preserves_sync = out.preserves_sync && r <= tol;
    return out;
}

} // namespace qlbit
