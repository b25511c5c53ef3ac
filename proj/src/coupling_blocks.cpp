#include "qlbit/coupling_blocks.hpp"

#include <cmath>
#include <string>

#include "qlbit/errors.hpp"

namespace qlbit {

CouplingBlock CouplingBlock::adjoint_block() const {
    CouplingBlock out;
    out.n = m;
    out.m = n;
    out.entries = adjoint(entries);
    out.alphabet = alphabet;
    if (alphabet == CouplingAlphabet::Mu4Zero) {
        out.exact.resize(n * m);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < m; ++j) out.exact[j * n + i] = exact_at(i, j).conj();
    }
    return out;
}

CouplingBlock CouplingBlock::transpose_block() const {
    CouplingBlock out;
    out.n = m;
    out.m = n;
    out.entries = transpose(entries);
    out.alphabet = alphabet;
    if (alphabet == CouplingAlphabet::Mu4Zero) {
        out.exact.resize(n * m);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < m; ++j) out.exact[j * n + i] = exact_at(i, j);
    }
    return out;
}

CouplingBlock CouplingBlock::continuous(Matrix m_) {
    CouplingBlock b;
    b.n = m_.rows();
    b.m = m_.cols();
    b.entries = std::move(m_);
    b.alphabet = CouplingAlphabet::Continuous;
    return b;
}

CouplingBlock rank_one_coupling(Complex l, std::size_t n, std::size_t m) {
    if (n < 1 || m < 1) throw Error(ErrorCode::InvalidArgument, "coupling block needs positive dimensions");
    CouplingBlock b;
    b.n = n;
    b.m = m;
    b.alphabet = CouplingAlphabet::Continuous;
    b.entries = Matrix(n, m);
    const Complex v = l / std::sqrt(double(n) * double(m));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < m; ++j) b.entries(i, j) = v;
    return b;
}

bool lattice_member(GaussianInt l, std::size_t q) {
    return std::abs(l.c) + std::abs(l.d) <= static_cast<std::int64_t>(q);
}

CouplingBlock matching_coupling(GaussianInt l, std::size_t q) {
    if (q < 1) throw Error(ErrorCode::InvalidArgument, "matching coupling needs q >= 1");
    if (!lattice_member(l, q))
        throw Error(ErrorCode::LatticeViolation,
                    "|c|+|d| = " + std::to_string(std::abs(l.c) + std::abs(l.d)) +
                        " exceeds q = " + std::to_string(q));

    const std::int64_t sc = (l.c > 0) - (l.c < 0);
    const std::int64_t sd = (l.d > 0) - (l.d < 0);
    const std::size_t nc = static_cast<std::size_t>(std::abs(l.c));
    const std::size_t nd = static_cast<std::size_t>(std::abs(l.d));

    CouplingBlock b;
    b.n = q;
    b.m = q;
    b.alphabet = CouplingAlphabet::Mu4Zero;
    b.entries = Matrix(q, q);
    b.exact.assign(q * q, GaussianInt{});

    // P_j is the cyclic shift by j: row i meets column (i + j) mod q. Distinct
    // shifts give disjoint matchings, so each entry is written at most once.
    for (std::size_t i = 0; i < q; ++i) {
        for (std::size_t j = 0; j < nc; ++j) {
            const std::size_t col = (i + j) % q;
            b.exact[i * q + col] = GaussianInt{sc, 0};
            b.entries(i, col) = Complex{double(sc), 0.0};
        }
        for (std::size_t j = nc; j < nc + nd; ++j) {
            const std::size_t col = (i + j) % q;
            b.exact[i * q + col] = GaussianInt{0, sd};
            b.entries(i, col) = Complex{0.0, double(sd)};
        }
    }
    return b;
}

RegularityReport algebraic_regularity(const CouplingBlock& c, std::optional<double> tol_opt) {
    const std::size_t n = c.n, m = c.m;
    if (c.entries.rows() != n || c.entries.cols() != m)
        throw Error(ErrorCode::DimensionMismatch, "coupling block shape mismatch");
    const double tol = tol_opt.value_or(c.alphabet == CouplingAlphabet::Mu4Zero ? 0.0 : 1e-12);
    if (tol < 0.0) throw Error(ErrorCode::InvalidArgument, "tolerance must be nonnegative");

    // Exact path: Z[i] sums, zero residual demanded entrywise.
    if (c.alphabet == CouplingAlphabet::Mu4Zero && tol == 0.0) {
        GaussianInt s0{};
        for (std::size_t i = 0; i < n; ++i) {
            GaussianInt rs{};
            for (std::size_t j = 0; j < m; ++j) rs += c.exact_at(i, j);
            if (i == 0) s0 = rs;
            else if (!(rs == s0))
                throw Error(ErrorCode::NotAlgebraicallyRegular, "row " + std::to_string(i) + " sum differs");
        }
        // Exact blocks are balanced (n == m), so the column constant is s0 too.
        for (std::size_t j = 0; j < m; ++j) {
            GaussianInt cs{};
            for (std::size_t i = 0; i < n; ++i) cs += c.exact_at(i, j);
            if (!(cs == s0))
                throw Error(ErrorCode::NotAlgebraicallyRegular, "column " + std::to_string(j) + " sum differs");
        }
        RegularityReport rep;
        rep.sA = s0.to_complex();
        rep.sB = rep.sA * (double(n) / double(m));
        rep.effective_l = rep.sA * std::sqrt(double(n) / double(m));
        rep.residual = 0.0;
        return rep;
    }

    Vector ones_m(m, Complex{1.0, 0.0});
    Vector rowsum = matvec(c.entries, ones_m);
    Vector colsum(m, Complex{});
    for (std::size_t i = 0; i < n; ++i)
        kernels::ops().axpy(m, Complex{1.0, 0.0}, c.entries.row(i), colsum.data()); // C^T 1_n

    Complex sA{};
    for (const Complex& v : rowsum) sA += v;
    sA /= double(n);
    Complex sB{};
    for (const Complex& v : colsum) sB += v;
    sB /= double(m);

    const double scale = 1.0 + max_abs(c.entries) * double(std::max(n, m));
    double residual = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double dev = std::abs(rowsum[i] - sA);
        if (dev > tol * scale)
            throw Error(ErrorCode::NotAlgebraicallyRegular,
                        "row " + std::to_string(i) + " deviates by " + std::to_string(dev));
        residual = std::max(residual, dev);
    }
    for (std::size_t j = 0; j < m; ++j) {
        const double dev = std::abs(colsum[j] - sB);
        if (dev > tol * scale)
            throw Error(ErrorCode::NotAlgebraicallyRegular,
                        "column " + std::to_string(j) + " deviates by " + std::to_string(dev));
        residual = std::max(residual, dev);
    }

    RegularityReport rep;
    rep.sA = sA;
    rep.sB = sB;
    rep.effective_l = sA * std::sqrt(double(n) / double(m));
    rep.residual = residual;
    return rep;
}

} // namespace qlbit
