#include "qlbit/dense.hpp"

#include <cmath>

#include "qlbit/errors.hpp"

namespace qlbit {

namespace {
void require(bool ok, const char* what) {
    if (!ok) throw Error(ErrorCode::DimensionMismatch, what);
}
} // namespace

Matrix& Matrix::operator+=(const Matrix& b) {
    require(rows_ == b.rows_ && cols_ == b.cols_, "matrix addition shape");
    kernels::ops().axpy(a_.size(), 1.0, b.a_.data(), a_.data());
    return *this;
}

Matrix& Matrix::operator-=(const Matrix& b) {
    require(rows_ == b.rows_ && cols_ == b.cols_, "matrix subtraction shape");
    kernels::ops().axpy(a_.size(), -1.0, b.a_.data(), a_.data());
    return *this;
}

Matrix& Matrix::operator*=(Complex s) {
    kernels::ops().scal(a_.size(), s, a_.data());
    return *this;
}

Matrix transpose(const Matrix& a) {
    Matrix t(a.cols(), a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) t(j, i) = a(i, j);
    return t;
}

Matrix conjugate(const Matrix& a) {
    Matrix c(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = std::conj(a(i, j));
    return c;
}

Matrix adjoint(const Matrix& a) {
    Matrix t(a.cols(), a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) t(j, i) = std::conj(a(i, j));
    return t;
}

Vector matvec(const Matrix& a, const Vector& x) {
    require(a.cols() == x.size(), "matvec shape");
    Vector y(a.rows());
    const auto& k = kernels::ops();
    for (std::size_t i = 0; i < a.rows(); ++i) y[i] = k.dotu(a.cols(), a.row(i), x.data());
    return y;
}

Vector matvec_adjoint(const Matrix& a, const Vector& x) {
    require(a.rows() == x.size(), "adjoint matvec shape");
    Vector y(a.cols());
    const auto& k = kernels::ops();
    // y += conj(row_i) * x_i accumulated over rows keeps the walk contiguous.
    for (std::size_t i = 0; i < a.rows(); ++i) k.axpy_conj(a.cols(), x[i], a.row(i), y.data());
    return y;
}

Matrix matmul(const Matrix& a, const Matrix& b) {
    require(a.cols() == b.rows(), "matmul shape");
    Matrix c(a.rows(), b.cols());
    const auto& k = kernels::ops();
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t p = 0; p < a.cols(); ++p) {
            const Complex aip = a(i, p);
            if (aip != Complex{}) k.axpy(b.cols(), aip, b.row(p), c.row(i));
        }
    return c;
}

double frobenius_norm(const Matrix& a) {
    return std::sqrt(kernels::ops().nrm2sq(a.rows() * a.cols(), a.data()));
}

double one_norm(const Matrix& a) {
    std::vector<double> colsum(a.cols(), 0.0);
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) colsum[j] += std::abs(a(i, j));
    double m = 0.0;
    for (double v : colsum) m = std::max(m, v);
    return m;
}

double max_abs(const Matrix& a) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) m = std::max(m, std::abs(a(i, j)));
    return m;
}

double vec_norm(const Vector& x) { return std::sqrt(kernels::ops().nrm2sq(x.size(), x.data())); }

Complex vdot(const Vector& x, const Vector& y) {
    require(x.size() == y.size(), "dot shape");
    return kernels::ops().dotc(x.size(), x.data(), y.data());
}

Vector normalized(Vector x) {
    const double n = vec_norm(x);
    if (n == 0.0) throw Error(ErrorCode::InvalidArgument, "cannot normalize zero vector");
    kernels::ops().scal(x.size(), 1.0 / n, x.data());
    return x;
}

bool is_hermitian(const Matrix& a, double tol) {
    if (a.rows() != a.cols()) return false;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = i; j < a.cols(); ++j)
            if (std::abs(a(i, j) - std::conj(a(j, i))) > tol) return false;
    return true;
}

} // namespace qlbit
