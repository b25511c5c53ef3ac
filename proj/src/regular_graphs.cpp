#include "qlbit/regular_graphs.hpp"

#include <string>

#include "qlbit/errors.hpp"

namespace qlbit {

Matrix RegularGraph::to_matrix() const {
    Matrix m(q, q);
    for (std::size_t i = 0; i < q; ++i)
        for (std::size_t j = 0; j < q; ++j)
            if (at(i, j)) m(i, j) = 1.0;
    return m;
}

RegularGraph circulant_regular(std::size_t q, std::size_t k) {
    if (q < 1) throw Error(ErrorCode::InvalidArgument, "need at least one vertex");
    if (k > q - 1)
        throw Error(ErrorCode::DegreeOutOfRange,
                    "k = " + std::to_string(k) + " exceeds q - 1 = " + std::to_string(q - 1));
    if ((q * k) % 2 != 0)
        throw Error(ErrorCode::ParityViolation,
                    "q*k = " + std::to_string(q * k) + " is odd; no simple regular graph exists");

    RegularGraph g;
    g.q = q;
    g.k = k;
    g.adjacency.assign(q * q, 0);

    std::vector<std::size_t> shifts;
    for (std::size_t s = 1; s <= k / 2; ++s) {
        shifts.push_back(s);
        shifts.push_back(q - s);
    }
    if (k % 2 == 1) shifts.push_back(q / 2); // q even here by the parity check

    for (std::size_t i = 0; i < q; ++i)
        for (std::size_t s : shifts) g.adjacency[i * q + (i + s) % q] = 1;
    return g;
}

namespace {

std::size_t check_regular(std::size_t q, auto entry) {
    std::size_t k = 0;
    for (std::size_t i = 0; i < q; ++i) {
        if (entry(i, i) != 0.0) throw Error(ErrorCode::SelfLoop, "nonzero diagonal at vertex " + std::to_string(i));
        std::size_t rowsum = 0;
        for (std::size_t j = 0; j < q; ++j) {
            const double v = entry(i, j);
            if (v != 0.0 && v != 1.0)
                throw Error(ErrorCode::NotRegular, "entry not in {0,1} at (" + std::to_string(i) + "," + std::to_string(j) + ")");
            if (v != entry(j, i))
                throw Error(ErrorCode::NotSymmetric, "asymmetry at (" + std::to_string(i) + "," + std::to_string(j) + ")");
            rowsum += static_cast<std::size_t>(v);
        }
        if (i == 0) k = rowsum;
        else if (rowsum != k)
            throw Error(ErrorCode::NotRegular,
                        "row " + std::to_string(i) + " has degree " + std::to_string(rowsum) +
                            ", expected " + std::to_string(k));
    }
    return k;
}

} // namespace

std::size_t verify_regular(const RegularGraph& g) {
    return check_regular(g.q, [&](std::size_t i, std::size_t j) { return double(g.at(i, j)); });
}

std::size_t verify_regular(const Matrix& adjacency) {
    if (adjacency.rows() != adjacency.cols())
        throw Error(ErrorCode::DimensionMismatch, "adjacency must be square");
    return check_regular(adjacency.rows(), [&](std::size_t i, std::size_t j) {
        const Complex v = adjacency(i, j);
        if (v.imag() != 0.0) throw Error(ErrorCode::NotRegular, "complex entry in 0/1 adjacency");
        return v.real();
    });
}

} // namespace qlbit
