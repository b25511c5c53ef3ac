#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qlbit/regular_graphs.hpp"
#include "test_support.hpp"

using namespace qlbit;

TEST_CASE("circulant construction reference cases") {
    // q=6, k=3: connection set {+-1, 3}, every row sum 3
    const RegularGraph g = circulant_regular(6, 3);
    CHECK(verify_regular(g) == 3);
    CHECK(g.at(0, 1) == 1);
    CHECK(g.at(0, 5) == 1);
    CHECK(g.at(0, 3) == 1);
    CHECK(g.at(0, 2) == 0);

    // empty graph
    const RegularGraph z = circulant_regular(4, 0);
    for (auto v : z.adjacency) CHECK(v == 0);

    // parity violation: q=5, k=3 has odd q*k
    CHECK(testsup::throws_code(ErrorCode::ParityViolation, [] { circulant_regular(5, 3); }));
    CHECK(testsup::throws_code(ErrorCode::DegreeOutOfRange, [] { circulant_regular(4, 4); }));

    // K2 and K4
    const RegularGraph k2 = circulant_regular(2, 1);
    CHECK(k2.at(0, 1) == 1);
    CHECK(k2.at(1, 0) == 1);
    CHECK(verify_regular(circulant_regular(4, 3)) == 3);
}

TEST_CASE("verify_regular rejects the named defects") {
    // complete graph K4 verifies with degree 3
    Matrix k4(4, 4);
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j)
            if (i != j) k4(i, j) = 1.0;
    CHECK(verify_regular(k4) == 3);

    // path P3 is not regular (degrees 1,2,1)
    Matrix p3(3, 3);
    p3(0, 1) = p3(1, 0) = 1.0;
    p3(1, 2) = p3(2, 1) = 1.0;
    CHECK(testsup::throws_code(ErrorCode::NotRegular, [&] { verify_regular(p3); }));

    Matrix asym(2, 2);
    asym(0, 1) = 1.0;
    CHECK(testsup::throws_code(ErrorCode::NotSymmetric, [&] { verify_regular(asym); }));

    Matrix loop(2, 2);
    loop(0, 0) = 1.0;
    CHECK(testsup::throws_code(ErrorCode::SelfLoop, [&] { verify_regular(loop); }));

    // round trip
    CHECK(verify_regular(circulant_regular(8, 5)) == 5);
}

TEST_CASE("all-ones vector is a k-eigenvector, residual <= 1e-13") {
    for (std::size_t q : {2u, 3u, 4u, 6u, 9u, 16u, 32u}) {
        for (std::size_t k = 0; k < q; ++k) {
            if ((q * k) % 2 != 0) continue;
            const RegularGraph g = circulant_regular(q, k);
            const Matrix a = g.to_matrix();
            Vector ones(q, Complex{1.0 / std::sqrt(double(q)), 0.0});
            Vector r = matvec(a, ones);
            kernels::ops().axpy(q, Complex{-double(k), 0.0}, ones.data(), r.data());
            CHECK(vec_norm(r) <= 1e-13 * (1.0 + double(k)));
        }
    }
}

TEST_CASE("round trip over all even q <= 32 and every admissible degree") {
    for (std::size_t q = 2; q <= 32; q += 2)
        for (std::size_t k = 0; k <= q - 1; ++k) REQUIRE(verify_regular(circulant_regular(q, k)) == k);
}
