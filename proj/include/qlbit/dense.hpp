#pragma once

#include <cstddef>
#include <vector>

#include "qlbit/complex_scalar.hpp"
#include "qlbit/kernels.hpp"

namespace qlbit {

using Vector = std::vector<Complex>;

/// Dense row-major complex matrix. Rows are contiguous so the kernel layer
/// can run on them directly.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols) {}

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool empty() const { return a_.empty(); }

    Complex& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    const Complex& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

    Complex* row(std::size_t i) { return a_.data() + i * cols_; }
    const Complex* row(std::size_t i) const { return a_.data() + i * cols_; }

    Complex* data() { return a_.data(); }
    const Complex* data() const { return a_.data(); }

    Matrix& operator+=(const Matrix& b);
    Matrix& operator-=(const Matrix& b);
    Matrix& operator*=(Complex s);

    friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
    friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
    friend Matrix operator*(Matrix a, Complex s) { return a *= s; }
    friend Matrix operator*(Complex s, Matrix a) { return a *= s; }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Complex> a_;
};

Matrix transpose(const Matrix& a);
Matrix conjugate(const Matrix& a);
Matrix adjoint(const Matrix& a);

/// y = A x
Vector matvec(const Matrix& a, const Vector& x);
/// y = A^dagger x
Vector matvec_adjoint(const Matrix& a, const Vector& x);
/// C = A B
Matrix matmul(const Matrix& a, const Matrix& b);

double frobenius_norm(const Matrix& a);
/// Maximum absolute column sum.
double one_norm(const Matrix& a);
double max_abs(const Matrix& a);

double vec_norm(const Vector& x);
/// sum conj(x[i]) y[i]
Complex vdot(const Vector& x, const Vector& y);
Vector normalized(Vector x);

bool is_hermitian(const Matrix& a, double tol);

} // namespace qlbit
