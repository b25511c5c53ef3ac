#pragma once

#include <optional>
#include <string>

#include "qlbit/assembly.hpp"
#include "qlbit/discrete_density.hpp"

namespace qlbit {
namespace io {

/// Matrix Market "coordinate complex general" with full-precision entries
/// (%.17g), so a write/read round trip is bit exact.
void write_matrix_market(const std::string& path, const Matrix& m);
Matrix read_matrix_market(const std::string& path);

/// Vectors travel as Matrix Market "array complex general" with one column.
void write_vector_market(const std::string& path, const Vector& v);
Vector read_vector_market(const std::string& path);

/// JSON sidecar carrying what the matrix file cannot: block sizes, coupling
/// class, design parameters and spectral targets.
struct Sidecar {
    std::size_t n = 0;
    std::size_t m = 0;
    CouplingClass cls = CouplingClass::Hermitian;
    std::optional<DesignParams> params;
    std::optional<double> lambda;
    std::optional<double> delta;
    std::optional<Complex> r;
};
void write_sidecar(const std::string& path, const Sidecar& sc);
Sidecar read_sidecar(const std::string& path);

/// Lossless exact form of a discrete design: Gaussian integers as [c, d]
/// pairs, the mu4+0 coupling entries included up to the size cap.
void write_exact_design(const std::string& path, const DiscreteDesign& d);
DiscreteDesign read_exact_design(const std::string& path);

/// "a+bi", polar "R*exp(i*theta)" and the symbolic constants pi and sqrt2,
/// with +-*/, parentheses and exp/sqrt/cos/sin/tan.
Complex parse_complex(const std::string& text);
/// Strict integer "c+di" form for exact inputs.
GaussianInt parse_gaussian_int(const std::string& text);

std::string format_complex(Complex v);

} // namespace io
} // namespace qlbit
