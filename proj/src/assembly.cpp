#include "qlbit/assembly.hpp"

#include <cmath>

#include "qlbit/errors.hpp"

namespace qlbit {

SynchronizedBasis SynchronizedBasis::make(std::size_t n, std::size_t m) {
    if (n < 1 || m < 1) throw Error(ErrorCode::InvalidArgument, "blocks need at least one vertex");
    SynchronizedBasis b;
    b.n = n;
    b.m = m;
    b.ket0.assign(n + m, Complex{});
    b.ket1.assign(n + m, Complex{});
    const double va = 1.0 / std::sqrt(double(n));
    const double vb = 1.0 / std::sqrt(double(m));
    for (std::size_t i = 0; i < n; ++i) b.ket0[i] = va;
    for (std::size_t j = 0; j < m; ++j) b.ket1[n + j] = vb;
    return b;
}

BlockOperator assemble(CouplingClass cls, Matrix a, Matrix b, CouplingBlock x,
                       std::optional<CouplingBlock> y) {
    const std::size_t n = a.rows();
    const std::size_t m = b.rows();
    if (a.cols() != n || b.cols() != m)
        throw Error(ErrorCode::DimensionMismatch, "diagonal blocks must be square");
    if (x.n != n || x.m != m)
        throw Error(ErrorCode::DimensionMismatch, "upper coupling block must be n x m");

    const bool symmetric_cls =
        cls == CouplingClass::ComplexSymmetric || cls == CouplingClass::RealSymComplexDetuning;

    CouplingBlock yb;
    if (symmetric_cls || cls == CouplingClass::Hermitian) {
        if (y.has_value())
            throw Error(ErrorCode::ClassInvariantViolation,
                        "symmetric/Hermitian classes derive the lower block from X");
        yb = symmetric_cls ? x.transpose_block() : x.adjoint_block();
    } else {
        if (!y.has_value())
            throw Error(ErrorCode::ClassInvariantViolation,
                        "asymmetric/generalized classes need an explicit lower block");
        yb = std::move(*y);
    }
    if (yb.n != m || yb.m != n)
        throw Error(ErrorCode::DimensionMismatch, "lower coupling block must be m x n");

    if (cls == CouplingClass::Hermitian) {
        const double tol = 1e-12 * (1.0 + std::max(max_abs(a), max_abs(b)));
        if (!is_hermitian(a, tol) || !is_hermitian(b, tol))
            throw Error(ErrorCode::ClassInvariantViolation,
                        "Hermitian class needs Hermitian diagonal blocks");
    }

    BlockOperator op;
    op.n = n;
    op.m = m;
    op.cls = cls;
    op.full = Matrix(n + m, n + m);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) op.full(i, j) = a(i, j);
        for (std::size_t j = 0; j < m; ++j) op.full(i, n + j) = -x.entries(i, j);
    }
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < n; ++j) op.full(n + i, j) = -yb.entries(i, j);
        for (std::size_t j = 0; j < m; ++j) op.full(n + i, n + j) = b(i, j);
    }
    op.a = std::move(a);
    op.b = std::move(b);
    op.x = std::move(x);
    op.y = std::move(yb);
    return op;
}

BlockOperator assemble(CouplingClass cls, const RegularGraph& a, const RegularGraph& b,
                       CouplingBlock x, std::optional<CouplingBlock> y) {
    return assemble(cls, a.to_matrix(), b.to_matrix(), std::move(x), std::move(y));
}

Vector embed_state(const TargetState& s, const SynchronizedBasis& basis) {
    Vector psi(basis.n + basis.m);
    for (std::size_t i = 0; i < basis.n + basis.m; ++i)
        psi[i] = s.omega1 * basis.ket0[i] + s.omega2 * basis.ket1[i];
    return psi;
}

Vector embed_ratio(const AmplitudeRatio& r, const SynchronizedBasis& basis, double global_phase) {
    return embed_state(state_from_ratio(r, global_phase), basis);
}

SyncRestriction restrict_to_sync(const BlockOperator& op) {
    const SynchronizedBasis basis = SynchronizedBasis::make(op.n, op.m);
    const Vector r0 = matvec(op.full, basis.ket0);
    const Vector r1 = matvec(op.full, basis.ket1);

    SyncRestriction out;
    out.block.m11 = vdot(basis.ket0, r0);
    out.block.m21 = vdot(basis.ket1, r0);
    out.block.m12 = vdot(basis.ket0, r1);
    out.block.m22 = vdot(basis.ket1, r1);

    auto defect = [&](const Vector& rv, Complex c0, Complex c1) {
        Vector d = rv;
        kernels::ops().axpy(d.size(), -c0, basis.ket0.data(), d.data());
        kernels::ops().axpy(d.size(), -c1, basis.ket1.data(), d.data());
        return vec_norm(d);
    };
    out.invariance_residual = std::max(defect(r0, out.block.m11, out.block.m21),
                                       defect(r1, out.block.m12, out.block.m22));
    return out;
}

Matrix sync_shifted_block(const RegularGraph& g, Complex k_target) {
    Matrix a = g.to_matrix();
    const Complex shift = (k_target - double(g.k)) / double(g.q); // (k* - k) V V^dagger
    for (std::size_t i = 0; i < g.q; ++i)
        for (std::size_t j = 0; j < g.q; ++j) a(i, j) += shift;
    return a;
}

BlockOperator diagonal_shift(BlockOperator op, Complex shift) {
    for (std::size_t i = 0; i < op.n; ++i) op.a(i, i) += shift;
    for (std::size_t i = 0; i < op.m; ++i) op.b(i, i) += shift;
    for (std::size_t i = 0; i < op.n + op.m; ++i) op.full(i, i) += shift;
    return op;
}

RecoveredOperator block_operator_from_full(Matrix full, std::size_t n, std::size_t m,
                                           CouplingClass cls) {
    if (full.rows() != n + m || full.cols() != n + m)
        throw Error(ErrorCode::DimensionMismatch, "matrix size does not match n + m");

    RecoveredOperator out;
    BlockOperator& op = out.op;
    op.n = n;
    op.m = m;
    op.a = Matrix(n, n);
    op.b = Matrix(m, m);
    Matrix x(n, m), y(m, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) op.a(i, j) = full(i, j);
        for (std::size_t j = 0; j < m; ++j) x(i, j) = -full(i, n + j);
    }
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < n; ++j) y(i, j) = -full(n + i, j);
        for (std::size_t j = 0; j < m; ++j) op.b(i, j) = full(n + i, n + j);
    }
    op.x = CouplingBlock::continuous(std::move(x));
    op.y = CouplingBlock::continuous(std::move(y));

    if (cls == CouplingClass::Hermitian) {
        const double tol = 1e-12 * (1.0 + max_abs(full));
        out.class_structure_ok = is_hermitian(full, tol);
    } else if (cls == CouplingClass::ComplexSymmetric || cls == CouplingClass::RealSymComplexDetuning) {
        double dev = 0.0;
        for (std::size_t i = 0; i < n + m; ++i)
            for (std::size_t j = i + 1; j < n + m; ++j)
                dev = std::max(dev, std::abs(full(i, j) - full(j, i)));
        out.class_structure_ok = dev <= 1e-12 * (1.0 + max_abs(full));
    }
    op.cls = out.class_structure_ok ? cls : CouplingClass::Generalized;
    op.full = std::move(full);
    return out;
}

} // namespace qlbit
