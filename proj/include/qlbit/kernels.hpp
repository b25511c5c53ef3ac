#pragma once

#include <complex>
#include <cstddef>

namespace qlbit::kernels {

using cxd = std::complex<double>;

/// The hot complex-vector primitives behind the dense layer. Each entry has a
/// scalar reference implementation and, on x86-64 with AVX2+FMA, a vectorized
/// variant selected at runtime. Both variants are equivalence-tested against
/// each other; any other backend must match the scalar semantics.
struct Ops {
    // y += a * x
    void (*axpy)(std::size_t n, cxd a, const cxd* x, cxd* y);
    // y += a * conj(x)
    void (*axpy_conj)(std::size_t n, cxd a, const cxd* x, cxd* y);
    // sum x[i] * y[i]
    cxd (*dotu)(std::size_t n, const cxd* x, const cxd* y);
    // sum conj(x[i]) * y[i]
    cxd (*dotc)(std::size_t n, const cxd* x, const cxd* y);
    // sum |x[i]|^2
    double (*nrm2sq)(std::size_t n, const cxd* x);
    // x *= a
    void (*scal)(std::size_t n, cxd a, cxd* x);
    // plane rotation with real c: (x, y) <- (c*x + s*y, -conj(s)*x + c*y)
    void (*rot)(std::size_t n, cxd* x, cxd* y, double c, cxd s);

    const char* name;
};

/// Active kernel table. Resolved once: QLBIT_KERNELS=scalar|avx2 overrides,
/// otherwise the best variant the CPU supports.
const Ops& ops();

const Ops& scalar_ops();

/// AVX2 table, or nullptr when the build or the CPU lacks it.
const Ops* avx2_ops();

/// Force a backend by name ("scalar", "avx2"); nullptr restores auto-selection.
/// Throws on unknown or unavailable backends. Intended for tests.
void select(const char* name);

} // namespace qlbit::kernels
