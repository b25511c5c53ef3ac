#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "qlbit/complex_scalar.hpp"
#include "test_support.hpp"

using namespace qlbit;

namespace {
const double kPi = std::acos(-1.0);
const double kSqrt2 = std::sqrt(2.0);
} // namespace

TEST_CASE("ratio_from_state on reference states") {
    const double s = 1.0 / kSqrt2;
    CHECK(std::abs(ratio_from_state(TargetState(s, s)).value - 1.0) < 1e-15);

    // tan(pi/8) = sqrt(2) - 1
    const TargetState h(std::cos(kPi / 8), std::sin(kPi / 8));
    CHECK(ratio_from_state(h).value.real() == doctest::Approx(kSqrt2 - 1).epsilon(1e-14));
    CHECK(std::abs(ratio_from_state(h).value.imag()) < 1e-15);

    const TargetState t(Complex{s, 0}, std::polar(s, kPi / 4));
    CHECK(std::abs(ratio_from_state(t).value - std::polar(1.0, kPi / 4)) < 1e-15);

    CHECK(testsup::throws_code(ErrorCode::BasisState,
                               [] { ratio_from_state(TargetState(1.0, 0.0)); }));
    CHECK(testsup::throws_code(ErrorCode::BasisState,
                               [] { ratio_from_state(TargetState(0.0, 1.0)); }));
}

TEST_CASE("state_from_ratio reference values") {
    const double s = 1.0 / kSqrt2;
    const TargetState a = state_from_ratio(AmplitudeRatio(1.0));
    CHECK(std::abs(a.omega1 - s) < 1e-15);
    CHECK(std::abs(a.omega2 - s) < 1e-15);

    const TargetState b = state_from_ratio(AmplitudeRatio(Complex{0, 1}));
    CHECK(std::abs(b.omega1 - s) < 1e-15);
    CHECK(std::abs(b.omega2 - Complex{0, s}) < 1e-15);

    // |omega1| = 1/sqrt(1+|r|^2) with |r| = 2 gives 1/sqrt(5).
    const Complex r = 2.0 * std::polar(1.0, kPi / 4);
    const TargetState c = state_from_ratio(AmplitudeRatio(r));
    CHECK(std::norm(c.omega1) + std::norm(c.omega2) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(std::abs(c.omega1 - 1.0 / std::sqrt(5.0)) < 1e-14);
    CHECK(std::abs(c.omega2 / c.omega1 - r) < 1e-14);
}

TEST_CASE("ratio round trips within 1e-14 / 1e-12") {
    auto g = testsup::rng(23);
    for (int t = 0; t < 500; ++t) {
        const Complex r = testsup::random_annulus(g, 1e-3, 1e3);
        const double theta = testsup::uniform(g, -kPi, kPi);
        const TargetState s = state_from_ratio(AmplitudeRatio(r), theta);
        const Complex back = ratio_from_state(s).value;
        CHECK(std::abs(back - r) <= 1e-14 * (1.0 + std::abs(r)));

        // state -> ratio -> state with the phase of omega1 restored
        const TargetState s2 = state_from_ratio(ratio_from_state(s), std::arg(s.omega1));
        CHECK(std::abs(s2.omega1 - s.omega1) < 1e-12);
        CHECK(std::abs(s2.omega2 - s.omega2) < 1e-12);
    }
}

TEST_CASE("phase classification on the three reference ratios") {
    const PhaseFlags h = phase_classify(AmplitudeRatio(kSqrt2 - 1));
    CHECK(h.square_real);
    CHECK(h.sum_inverse_real);
    CHECK(!h.unimodular);
    CHECK(h.real);

    const PhaseFlags t = phase_classify(AmplitudeRatio(std::polar(1.0, kPi / 4)));
    CHECK(!t.square_real);
    CHECK(t.sum_inverse_real);
    CHECK(t.unimodular);
    CHECK(!t.real);

    const PhaseFlags gnr = phase_classify(AmplitudeRatio(2.0 * std::polar(1.0, kPi / 4)));
    CHECK(!gnr.square_real);
    CHECK(!gnr.sum_inverse_real);
    CHECK(!gnr.unimodular);
    CHECK(!gnr.real);
}

TEST_CASE("exact classification agrees with tol=0 floating on Q(i) inputs") {
    auto g = testsup::rng(31);
    for (int t = 0; t < 400; ++t) {
        const std::int64_t a = std::llround(testsup::uniform(g, -6, 6));
        const std::int64_t b = std::llround(testsup::uniform(g, -6, 6));
        const std::int64_t c = std::llround(testsup::uniform(g, -6, 6));
        const std::int64_t d = std::llround(testsup::uniform(g, -6, 6));
        const GaussianInt num{a, b}, den{c, d};
        if (num.is_zero() || den.is_zero()) continue;
        const GaussianRational r{num, den};
        const PhaseFlags ex = phase_classify_exact(r);

        // Exact predicates recomputed from first principles in Z[i].
        const GaussianInt p = num * den.conj(); // r = p / norm(den)
        CHECK(ex.real == (p.d == 0));
        CHECK(ex.unimodular == (num.norm() == den.norm()));
        const GaussianInt p2 = (num * num) * (den * den).conj();
        CHECK(ex.square_real == (p2.d == 0));
        // r + 1/r real <=> Im((num^2 + den^2) conj(num den)) == 0
        const GaussianInt num2 = num * num + den * den;
        const GaussianInt den2 = num * den;
        CHECK(ex.sum_inverse_real == ((num2 * den2.conj()).d == 0));

        // square-only classification must agree wherever defined
        const PhaseFlags sq = phase_classify_from_square(r * r);
        CHECK(sq.square_real == ex.square_real);
        CHECK(sq.unimodular == ex.unimodular);
        CHECK(sq.real == ex.real);
        CHECK(sq.sum_inverse_real == ex.sum_inverse_real);
    }
}

TEST_CASE("flag consistency: r real implies derived predicates") {
    auto g = testsup::rng(37);
    for (int t = 0; t < 200; ++t) {
        const double x = testsup::uniform(g, -10, 10);
        if (x == 0.0) continue;
        const PhaseFlags f = phase_classify(AmplitudeRatio(Complex{x, 0}));
        CHECK(f.real);
        CHECK(f.square_real);
        CHECK(f.sum_inverse_real);
    }
}

TEST_CASE("target state validation") {
    CHECK_THROWS_AS(TargetState(0.9, 0.9), Error);
    CHECK_NOTHROW(TargetState::normalized(3.0, Complex{0, 4}));
    const TargetState n = TargetState::normalized(3.0, Complex{0, 4});
    CHECK(std::abs(n.omega1 - 0.6) < 1e-15);
    CHECK(std::abs(n.omega2 - Complex{0, 0.8}) < 1e-15);
}
