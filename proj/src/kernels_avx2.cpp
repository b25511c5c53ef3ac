// AVX2+FMA kernels. One ymm register holds two interleaved complex doubles
// [re0 im0 re1 im1]; std::complex<double> is layout-compatible with double[2].
// This translation unit is compiled with -mavx2 -mfma on x86-64 only.

#include "qlbit/kernels.hpp"

#if defined(__x86_64__) || defined(_M_X64)
#define QLBIT_AVX2_TU 1
#include <immintrin.h>
#endif

namespace qlbit::kernels {

#ifdef QLBIT_AVX2_TU

namespace {

inline const double* dptr(const cxd* p) { return reinterpret_cast<const double*>(p); }
inline double* dptr(cxd* p) { return reinterpret_cast<double*>(p); }

// (a.re + i a.im) * v for two packed complex values in v.
inline __m256d cmul(__m256d are, __m256d aim, __m256d v) {
    const __m256d vswap = _mm256_permute_pd(v, 0b0101);
    return _mm256_fmaddsub_pd(are, v, _mm256_mul_pd(aim, vswap));
}

// conj(a) * v: (a.re - i a.im) * v.
inline __m256d cmul_conj_scalar(__m256d are, __m256d aim, __m256d v) {
    const __m256d vswap = _mm256_permute_pd(v, 0b0101);
    return _mm256_fmsubadd_pd(are, v, _mm256_mul_pd(aim, vswap));
}

// a * conj(v) per packed element.
inline __m256d cmul_conj_vec(__m256d are, __m256d aim, __m256d v) {
    // a*conj(v) = (ar*vr + ai*vi) + i(ai*vr - ar*vi)
    //           = swap-based: conj(v) has negated imag lanes.
    const __m256d sign = _mm256_set_pd(-0.0, 0.0, -0.0, 0.0);
    const __m256d vc = _mm256_xor_pd(v, sign);
    return cmul(are, aim, vc);
}

inline cxd reduce_c(__m256d acc) {
    const __m128d lo = _mm256_castpd256_pd128(acc);
    const __m128d hi = _mm256_extractf128_pd(acc, 1);
    const __m128d sum = _mm_add_pd(lo, hi);
    alignas(16) double out[2];
    _mm_store_pd(out, sum);
    return {out[0], out[1]};
}

void axpy_v(std::size_t n, cxd a, const cxd* x, cxd* y) {
    const __m256d are = _mm256_set1_pd(a.real());
    const __m256d aim = _mm256_set1_pd(a.imag());
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const __m256d xv = _mm256_loadu_pd(dptr(x + i));
        const __m256d yv = _mm256_loadu_pd(dptr(y + i));
        _mm256_storeu_pd(dptr(y + i), _mm256_add_pd(yv, cmul(are, aim, xv)));
    }
    for (; i < n; ++i) y[i] += a * x[i];
}

void axpy_conj_v(std::size_t n, cxd a, const cxd* x, cxd* y) {
    const __m256d are = _mm256_set1_pd(a.real());
    const __m256d aim = _mm256_set1_pd(a.imag());
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const __m256d xv = _mm256_loadu_pd(dptr(x + i));
        const __m256d yv = _mm256_loadu_pd(dptr(y + i));
        _mm256_storeu_pd(dptr(y + i), _mm256_add_pd(yv, cmul_conj_vec(are, aim, xv)));
    }
    for (; i < n; ++i) y[i] += a * std::conj(x[i]);
}

cxd dotu_v(std::size_t n, const cxd* x, const cxd* y) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const __m256d xv = _mm256_loadu_pd(dptr(x + i));
        const __m256d yv = _mm256_loadu_pd(dptr(y + i));
        // x*y with x as the "scalar" pattern per lane:
        const __m256d xre = _mm256_movedup_pd(xv);
        const __m256d xim = _mm256_permute_pd(xv, 0b1111);
        acc = _mm256_add_pd(acc, cmul(xre, xim, yv));
    }
    cxd tail{};
    for (; i < n; ++i) tail += x[i] * y[i];
    return reduce_c(acc) + tail;
}

cxd dotc_v(std::size_t n, const cxd* x, const cxd* y) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const __m256d xv = _mm256_loadu_pd(dptr(x + i));
        const __m256d yv = _mm256_loadu_pd(dptr(y + i));
        const __m256d xre = _mm256_movedup_pd(xv);
        const __m256d xim = _mm256_permute_pd(xv, 0b1111);
        acc = _mm256_add_pd(acc, cmul_conj_scalar(xre, xim, yv));
    }
    cxd tail{};
    for (; i < n; ++i) tail += std::conj(x[i]) * y[i];
    return reduce_c(acc) + tail;
}

double nrm2sq_v(std::size_t n, const cxd* x) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const __m256d xv = _mm256_loadu_pd(dptr(x + i));
        acc = _mm256_fmadd_pd(xv, xv, acc);
    }
    const __m128d lo = _mm256_castpd256_pd128(acc);
    const __m128d hi = _mm256_extractf128_pd(acc, 1);
    const __m128d s2 = _mm_add_pd(lo, hi);
    double out = _mm_cvtsd_f64(_mm_add_sd(s2, _mm_unpackhi_pd(s2, s2)));
    for (; i < n; ++i) out += std::norm(x[i]);
    return out;
}

void scal_v(std::size_t n, cxd a, cxd* x) {
    const __m256d are = _mm256_set1_pd(a.real());
    const __m256d aim = _mm256_set1_pd(a.imag());
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const __m256d xv = _mm256_loadu_pd(dptr(x + i));
        _mm256_storeu_pd(dptr(x + i), cmul(are, aim, xv));
    }
    for (; i < n; ++i) x[i] *= a;
}

void rot_v(std::size_t n, cxd* x, cxd* y, double c, cxd s) {
    const __m256d cv = _mm256_set1_pd(c);
    const __m256d sre = _mm256_set1_pd(s.real());
    const __m256d sim = _mm256_set1_pd(s.imag());
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const __m256d xv = _mm256_loadu_pd(dptr(x + i));
        const __m256d yv = _mm256_loadu_pd(dptr(y + i));
        const __m256d xn = _mm256_fmadd_pd(cv, xv, cmul(sre, sim, yv));
        const __m256d yn = _mm256_fmsub_pd(cv, yv, cmul_conj_scalar(sre, sim, xv));
        _mm256_storeu_pd(dptr(x + i), xn);
        _mm256_storeu_pd(dptr(y + i), yn);
    }
    const cxd sc = std::conj(s);
    for (; i < n; ++i) {
        const cxd xi = x[i];
        const cxd yi = y[i];
        x[i] = c * xi + s * yi;
        y[i] = -sc * xi + c * yi;
    }
}

} // namespace

const Ops* avx2_ops() {
    if (!__builtin_cpu_supports("avx2") || !__builtin_cpu_supports("fma")) return nullptr;
    static const Ops table{axpy_v, axpy_conj_v, dotu_v, dotc_v, nrm2sq_v, scal_v, rot_v, "avx2"};
    return &table;
}

#else // !QLBIT_AVX2_TU

const Ops* avx2_ops() { return nullptr; }

#endif

} // namespace qlbit::kernels
