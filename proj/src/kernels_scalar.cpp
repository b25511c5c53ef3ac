#include "qlbit/kernels.hpp"

namespace qlbit::kernels {

namespace {

void axpy_s(std::size_t n, cxd a, const cxd* x, cxd* y) {
    for (std::size_t i = 0; i < n; ++i) y[i] += a * x[i];
}

void axpy_conj_s(std::size_t n, cxd a, const cxd* x, cxd* y) {
    for (std::size_t i = 0; i < n; ++i) y[i] += a * std::conj(x[i]);
}

cxd dotu_s(std::size_t n, const cxd* x, const cxd* y) {
    cxd acc{};
    for (std::size_t i = 0; i < n; ++i) acc += x[i] * y[i];
    return acc;
}

cxd dotc_s(std::size_t n, const cxd* x, const cxd* y) {
    cxd acc{};
    for (std::size_t i = 0; i < n; ++i) acc += std::conj(x[i]) * y[i];
    return acc;
}

double nrm2sq_s(std::size_t n, const cxd* x) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += std::norm(x[i]);
    return acc;
}

void scal_s(std::size_t n, cxd a, cxd* x) {
    for (std::size_t i = 0; i < n; ++i) x[i] *= a;
}

void rot_s(std::size_t n, cxd* x, cxd* y, double c, cxd s) {
    const cxd sc = std::conj(s);
    for (std::size_t i = 0; i < n; ++i) {
        const cxd xi = x[i];
        const cxd yi = y[i];
        x[i] = c * xi + s * yi;
        y[i] = -sc * xi + c * yi;
    }
}

} // namespace

const Ops& scalar_ops() {
    static const Ops table{axpy_s, axpy_conj_s, dotu_s, dotc_s, nrm2sq_s, scal_s, rot_s, "scalar"};
    return table;
}

} // namespace qlbit::kernels
