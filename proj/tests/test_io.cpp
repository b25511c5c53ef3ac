#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <filesystem>

#include "qlbit/io.hpp"
#include "test_support.hpp"

using namespace qlbit;

namespace {

struct TempDir {
    std::filesystem::path path;
    TempDir() {
        path = std::filesystem::temp_directory_path() /
               ("qlbit_io_test_" + std::to_string(std::random_device{}()));
        std::filesystem::create_directories(path);
    }
    ~TempDir() { std::filesystem::remove_all(path); }
    std::string file(const std::string& name) const { return (path / name).string(); }
};

} // namespace

TEST_CASE("matrix market round trip is bit exact") {
    TempDir tmp;
    auto g = testsup::rng(227);
    const Matrix m = testsup::random_matrix(g, 7, 5);
    const std::string path = tmp.file("m.mtx");
    io::write_matrix_market(path, m);
    const Matrix back = io::read_matrix_market(path);
    REQUIRE(back.rows() == 7);
    REQUIRE(back.cols() == 5);
    for (std::size_t i = 0; i < 7; ++i)
        for (std::size_t j = 0; j < 5; ++j) CHECK(back(i, j) == m(i, j)); // exact bits

    // sparse zeros survive
    Matrix sp(3, 3);
    sp(0, 2) = Complex{1e-300, -2.5};
    sp(2, 1) = Complex{3.0, 0.0};
    io::write_matrix_market(path, sp);
    const Matrix spback = io::read_matrix_market(path);
    CHECK(spback(0, 2) == sp(0, 2));
    CHECK(spback(1, 1) == Complex{});
}

TEST_CASE("vector round trip") {
    TempDir tmp;
    auto g = testsup::rng(229);
    const Vector v = testsup::random_unit_vector(g, 9);
    const std::string path = tmp.file("v.mtx");
    io::write_vector_market(path, v);
    const Vector back = io::read_vector_market(path);
    REQUIRE(back.size() == v.size());
    for (std::size_t i = 0; i < v.size(); ++i) CHECK(back[i] == v[i]);
}

TEST_CASE("sidecar round trip") {
    TempDir tmp;
    io::Sidecar sc;
    sc.n = 6;
    sc.m = 4;
    sc.cls = CouplingClass::AsymmetricCommonK;
    sc.lambda = -0.75;
    sc.delta = 2.25;
    sc.r = Complex{1.25, -0.5};
    DesignParams p = realize_asymmetric_common_k(AmplitudeRatio(*sc.r), {-0.75, 2.25});
    sc.params = p;
    const std::string path = tmp.file("op.mtx.json");
    io::write_sidecar(path, sc);
    const io::Sidecar back = io::read_sidecar(path);
    CHECK(back.n == 6);
    CHECK(back.m == 4);
    CHECK(back.cls == CouplingClass::AsymmetricCommonK);
    CHECK(*back.lambda == -0.75);
    CHECK(*back.delta == 2.25);
    CHECK(*back.r == *sc.r);
    CHECK(back.params->kA == p.kA);
    CHECK(back.params->lB == p.lB);
}

TEST_CASE("exact design JSON: lossless and rule checked") {
    TempDir tmp;
    const DiscreteDesign d = discrete_design_from_ratio({2, -1}, {1, 1});
    const std::string path = tmp.file("design.json");
    io::write_exact_design(path, d);
    const DiscreteDesign back = io::read_exact_design(path);
    CHECK(back.z == d.z);
    CHECK(back.w == d.w);
    CHECK(back.l == d.l);
    CHECK(back.kA == d.kA);
    CHECK(back.kB == d.kB);
    CHECK(back.q == d.q);
    CHECK(exact_verify_discrete(back).pass);

    CHECK(testsup::throws_code(ErrorCode::IoError, [&] { io::read_exact_design(tmp.file("nope.json")); }));
}

TEST_CASE("complex expression parsing") {
    const double pi = std::acos(-1.0);
    CHECK(io::parse_complex("1+2i") == Complex{1, 2});
    CHECK(io::parse_complex("-0.5i") == Complex{0, -0.5});
    CHECK(io::parse_complex("i") == Complex{0, 1});
    CHECK(io::parse_complex("3") == Complex{3, 0});
    CHECK(std::abs(io::parse_complex("2*exp(i*pi/4)") - 2.0 * std::polar(1.0, pi / 4)) < 1e-15);
    CHECK(std::abs(io::parse_complex("exp(i*pi/4)") - std::polar(1.0, pi / 4)) < 1e-15);
    CHECK(std::abs(io::parse_complex("sqrt2-1") - Complex{std::sqrt(2.0) - 1.0, 0.0}) < 1e-15);
    CHECK(std::abs(io::parse_complex("cos(pi/8)") - std::cos(pi / 8)) < 1e-15);
    CHECK(std::abs(io::parse_complex("(1+i)/(1-i)") - Complex{0, 1}) < 1e-15);
    CHECK(std::abs(io::parse_complex(" 1e-3 ") - 0.001) < 1e-18);
    CHECK(testsup::throws_code(ErrorCode::ParseError, [] { io::parse_complex("2**3"); }));
    CHECK(testsup::throws_code(ErrorCode::ParseError, [] { io::parse_complex("foo(3)"); }));
    CHECK(testsup::throws_code(ErrorCode::ParseError, [] { io::parse_complex("1/0"); }));

    CHECK(io::parse_gaussian_int("2-1i") == GaussianInt{2, -1});
    CHECK(io::parse_gaussian_int("-i") == GaussianInt{0, -1});
    CHECK(io::parse_gaussian_int("7") == GaussianInt{7, 0});
    CHECK(testsup::throws_code(ErrorCode::ParseError, [] { io::parse_gaussian_int("0.5"); }));
}

TEST_CASE("matrix market rejects malformed input") {
    TempDir tmp;
    const std::string path = tmp.file("bad.mtx");
    {
        std::ofstream f(path);
        f << "%%MatrixMarket matrix coordinate real symmetric\n2 2 1\n1 1 1.0\n";
    }
    CHECK(testsup::throws_code(ErrorCode::IoError, [&] { io::read_matrix_market(path); }));
    {
        std::ofstream f(path);
        f << "%%MatrixMarket matrix coordinate complex general\n2 2 1\n9 1 1.0 0.0\n";
    }
    CHECK(testsup::throws_code(ErrorCode::IoError, [&] { io::read_matrix_market(path); }));
    CHECK(testsup::throws_code(ErrorCode::IoError, [&] { io::read_matrix_market(tmp.file("missing.mtx")); }));
}
