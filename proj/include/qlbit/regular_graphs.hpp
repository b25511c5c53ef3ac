#pragma once

#include <cstdint>
#include <vector>

#include "qlbit/dense.hpp"

namespace qlbit {

/// Simple k-regular graph on q vertices. The all-ones vector is an
/// eigenvector of the adjacency with eigenvalue k.
struct RegularGraph {
    std::size_t q = 0;
    std::size_t k = 0;
    std::vector<std::uint8_t> adjacency; // q*q, row-major, entries 0/1

    std::uint8_t at(std::size_t i, std::size_t j) const { return adjacency[i * q + j]; }

    Matrix to_matrix() const;
};

/// Deterministic circulant construction: connection set {+-1, ..., +-(k/2)},
/// plus the antipodal offset q/2 when k is odd (which needs q even).
/// Requires q >= 1, 0 <= k <= q-1 and q*k even.
RegularGraph circulant_regular(std::size_t q, std::size_t k);

/// Validates symmetry, zero diagonal, 0/1 entries and constant row sums;
/// returns the common degree k.
std::size_t verify_regular(const RegularGraph& g);
std::size_t verify_regular(const Matrix& adjacency);

} // namespace qlbit
