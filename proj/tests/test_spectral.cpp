#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "qlbit/spectral_verify.hpp"
#include "test_support.hpp"

using namespace qlbit;

namespace {

const double kPi = std::acos(-1.0);

BlockOperator hermitian_design_op(const DesignParams& p, std::size_t n, std::size_t m,
                                  std::size_t ka_base, std::size_t kb_base) {
    const Matrix a = sync_shifted_block(circulant_regular(n, ka_base), p.kA);
    const Matrix b = sync_shifted_block(circulant_regular(m, kb_base), p.kB);
    return assemble(CouplingClass::Hermitian, a, b, rank_one_coupling(p.lA, n, m));
}

} // namespace

TEST_CASE("perp basis is an orthonormal completion of the synchronized pair") {
    for (auto [n, m] : {std::pair<std::size_t, std::size_t>{2, 2}, {4, 6}, {1, 5}, {3, 1}, {1, 1}}) {
        const Matrix w = perp_basis(n, m);
        const Matrix u = sync_basis_matrix(n, m);
        REQUIRE(w.cols() == n + m - 2);
        if (w.cols() == 0) continue;
        const Matrix wtw = matmul(adjoint(w), w);
        for (std::size_t i = 0; i < w.cols(); ++i)
            for (std::size_t j = 0; j < w.cols(); ++j)
                CHECK(std::abs(wtw(i, j) - (i == j ? 1.0 : 0.0)) < 1e-13);
        const Matrix utw = matmul(adjoint(u), w);
        CHECK(max_abs(utw) < 1e-13);
    }
}

TEST_CASE("eig_full: decoupled spectrum is the union of block spectra") {
    const RegularGraph ga = circulant_regular(4, 2);
    const RegularGraph gb = circulant_regular(6, 3);
    const BlockOperator op =
        assemble(CouplingClass::Hermitian, ga, gb, rank_one_coupling(0.0, 4, 6));
    const SpectrumReport rep = eig_full(op);
    REQUIRE(rep.eigenvalues.size() == 10);
    REQUIRE(rep.perp_eigenvalues.size() == 8);
    CHECK(rep.max_imag == 0.0);

    std::vector<Complex> expected;
    for (const Matrix block : {ga.to_matrix(), gb.to_matrix()}) {
        const HermitianEig e = eig_hermitian(block, false);
        for (double v : e.values) expected.push_back(Complex{v, 0.0});
    }
    CHECK(testsup::multiset_match(rep.eigenvalues, expected, 1e-10));
}

TEST_CASE("eig_full: 4x4 Hermitian r=i design has sync eigenvalues {0, 2}") {
    const BlockOperator op = assemble(CouplingClass::Hermitian, circulant_regular(2, 1),
                                      circulant_regular(2, 1), matching_coupling({0, -1}, 2));
    const SpectrumReport rep = eig_full(op);
    CHECK(testsup::multiset_match({rep.sync_eigenvalues[0], rep.sync_eigenvalues[1]},
                                  {Complex{0, 0}, Complex{2, 0}}, 1e-12));
    // the full spectrum contains both designed values
    int hits = 0;
    for (const Complex& v : rep.eigenvalues)
        if (std::abs(v) < 1e-10 || std::abs(v - 2.0) < 1e-10) ++hits;
    CHECK(hits >= 2);
    CHECK(rep.max_residual <= 1e-12 * (1.0 + frobenius_norm(op.full)) * 4);
}

TEST_CASE("eig_full: forced non-real complex-symmetric design reports max_imag > 0") {
    // complex-symmetric block with kA = kB real and l = i has eigenvalues k -+ i;
    // lifted to a 4x4 operator with rank-one couplings.
    Matrix a = sync_shifted_block(circulant_regular(2, 1), Complex{1.0, 0.0});
    Matrix b = a;
    const BlockOperator op =
        assemble(CouplingClass::ComplexSymmetric, a, b, rank_one_coupling(Complex{0, 1}, 2, 2));
    const SpectrumReport rep = eig_full(op);
    CHECK(rep.max_imag > 0.5);

    // 2x2 characteristic oracle on the synchronized block agrees
    const EffectiveBlock blk = restrict_to_sync(op).block;
    const auto oracle = testsup::oracle_eig2_values(blk);
    CHECK(testsup::multiset_match({rep.sync_eigenvalues[0], rep.sync_eigenvalues[1]}, oracle, 1e-10));
}

TEST_CASE("eig_full size cap") {
    const BlockOperator op = assemble(CouplingClass::Hermitian, circulant_regular(4, 2),
                                      circulant_regular(4, 2), rank_one_coupling(1.0, 4, 4));
    CHECK(testsup::throws_code(ErrorCode::SizeCapExceeded, [&] { eig_full(op, 6); }));
}

TEST_CASE("verify_eigenpair") {
    const DesignParams p = realize_hermitian(AmplitudeRatio(Complex{1.5, -0.7}), {0.25, 1.5});
    const BlockOperator op = hermitian_design_op(p, 6, 4, 3, 2);
    const Vector psi = embed_ratio(AmplitudeRatio(Complex{1.5, -0.7}), SynchronizedBasis::make(6, 4));
    const EigenpairCheck ok = verify_eigenpair(op, psi, Complex{0.25, 0.0});
    CHECK(ok.pass);
    CHECK(ok.residual <= 1e-11 * (1.0 + frobenius_norm(op.full)));

    // zero operator: any unit vector has residual 0 at lambda 0
    const BlockOperator zop = assemble(CouplingClass::Hermitian, Matrix(3, 3), Matrix(3, 3),
                                       rank_one_coupling(0.0, 3, 3));
    auto g = testsup::rng(157);
    const Vector u = testsup::random_unit_vector(g, 6);
    CHECK(verify_eigenpair(zop, u, Complex{}).residual == 0.0);

    // wrong eigenvalue: residual is |delta|
    const EigenpairCheck off = verify_eigenpair(op, psi, Complex{0.25 + 1.5, 0.0});
    CHECK(off.residual == doctest::Approx(1.5).epsilon(1e-10));
}

TEST_CASE("reducing check: Hermitian designs reduce, decoupled reduce, asymmetric does not") {
    const DesignParams p = realize_hermitian(AmplitudeRatio(Complex{0.4, 2.2}), {-1.0, 2.0});
    const BlockOperator op = hermitian_design_op(p, 4, 4, 2, 2);
    const ReducingCheck rc = reducing_check(op);
    const double scale = frobenius_norm(op.full);
    CHECK(rc.cross_s_to_perp <= 1e-12 * scale);
    CHECK(rc.cross_perp_to_s <= 1e-12 * scale);

    const BlockOperator dec = assemble(CouplingClass::Hermitian, circulant_regular(4, 2),
                                       circulant_regular(4, 2), rank_one_coupling(0.0, 4, 4));
    const ReducingCheck rdec = reducing_check(dec);
    CHECK(rdec.cross_s_to_perp <= 1e-13);
    CHECK(rdec.cross_perp_to_s <= 1e-13);

    // asymmetric operator with X of constant row sums but non-constant column
    // sums: S stays invariant (X V_B parallel to V_A), yet X^dagger V_A has a
    // component outside span(V_B), so only the reverse compression is nonzero.
    Matrix xbad(4, 4);
    for (std::size_t i = 0; i < 4; ++i) xbad(i, 0) = 1.0; // rows sum to 1, columns (4,0,0,0)
    CouplingBlock xb = CouplingBlock::continuous(xbad);
    CouplingBlock yb = rank_one_coupling(0.5, 4, 4);
    const BlockOperator asym = assemble(CouplingClass::AsymmetricCommonK, circulant_regular(4, 2),
                                        circulant_regular(4, 2), std::move(xb), std::move(yb));
    const ReducingCheck ra = reducing_check(asym);
    CHECK(ra.cross_s_to_perp <= 1e-12 * frobenius_norm(asym.full));
    CHECK(ra.cross_perp_to_s > 0.1);
}

TEST_CASE("collision check: engineered collision and healthy margins") {
    // decoupled operator: sync values {kA, kB} = {2, 1}; perp spectrum of
    // circulant(4,2) contains 0 and -2, of circulant(2,1) contains -1.
    const BlockOperator dec = assemble(CouplingClass::Hermitian, circulant_regular(4, 2),
                                       circulant_regular(2, 1), rank_one_coupling(0.0, 4, 2));
    const SpectrumReport rep = eig_full(dec);
    // engineered: ask about lambda = 0, which collides with a perp eigenvalue
    CHECK(collision_check(rep, {0.0, 1.0}) <= 1e-12);
    // healthy: lambda = 0.37 sits away from {0, -2, -1}
    CHECK(collision_check(rep, {0.37, 0.1}) > 0.05);

    // generic design at larger q keeps a healthy margin
    const DesignParams p = realize_hermitian(AmplitudeRatio(Complex{0.9, 0.6}), {0.31, 1.47});
    const BlockOperator op = hermitian_design_op(p, 16, 16, 5, 7);
    const SpectrumReport rg = eig_full(op);
    CHECK(collision_check(rg, {0.31, 1.47}) > 0.1);
}

TEST_CASE("evolve: phase rotation on eigenvectors, unitarity, t=0 identity") {
    const Complex r{0.8, -1.1};
    const DesignParams p = realize_hermitian(AmplitudeRatio(r), {0.6, 2.4});
    const BlockOperator op = hermitian_design_op(p, 6, 6, 2, 4);
    const Vector psi = embed_ratio(AmplitudeRatio(r), SynchronizedBasis::make(6, 6));

    const Vector at0 = evolve(op, psi, 0.0);
    for (std::size_t i = 0; i < psi.size(); ++i) CHECK(std::abs(at0[i] - psi[i]) < 1e-12);

    for (double t : {0.5, 1.0, 3.0, 10.0}) {
        const Vector evolved = evolve(op, psi, t);
        CHECK(std::abs(vec_norm(evolved) - 1.0) <= 1e-11);
        const Complex phase = std::exp(Complex{0.0, -t * 0.6});
        for (std::size_t i = 0; i < psi.size(); ++i)
            REQUIRE(std::abs(evolved[i] - phase * psi[i]) <= 1e-10);
    }
}

TEST_CASE("evolve: complex-symmetric block grows as e^{t beta}") {
    // 2x2 operator (n = m = 1): A = [k], B = [k], coupling l = i.
    Matrix a(1, 1), b(1, 1);
    a(0, 0) = 0.4;
    b(0, 0) = 0.4;
    const BlockOperator op = assemble(CouplingClass::ComplexSymmetric, a, b,
                                      rank_one_coupling(Complex{0, 1}, 1, 1));
    // eigenvalues 0.4 -+ i; eigenvector (1, -1)/sqrt2 pairs with 0.4 + i
    const Vector v{Complex{1 / std::sqrt(2.0), 0}, Complex{-1 / std::sqrt(2.0), 0}};
    for (double t : {0.5, 1.0, 2.0, 5.0}) {
        const Vector psi = evolve(op, v, t);
        CHECK(vec_norm(psi) / std::exp(t) == doctest::Approx(1.0).epsilon(1e-8));
    }
}

TEST_CASE("evolve falls back to expm on defective operators, flagged") {
    // zero-gap real-coupling design at r = i: the 2x2 block is a single
    // Jordan block, so no well-conditioned eigenbasis exists.
    const DesignParams p = realize_zero_gap(CouplingClass::RealSymComplexDetuning,
                                            AmplitudeRatio(Complex{0, 1}), 0.3, 1.0);
    Matrix a(1, 1), b(1, 1);
    a(0, 0) = p.kA;
    b(0, 0) = p.kB;
    const BlockOperator op = assemble(CouplingClass::RealSymComplexDetuning, a, b,
                                      rank_one_coupling(p.lA, 1, 1));
    const Vector psi = embed_ratio(AmplitudeRatio(Complex{0, 1}), SynchronizedBasis::make(1, 1));
    EvolveInfo info;
    const Vector evolved = evolve(op, psi, 2.0, &info);
    CHECK(info.used_expm_fallback);
    // (1, i)/sqrt2 is still a genuine eigenvector at lambda; phase evolution holds
    const Complex phase = std::exp(Complex{0.0, -2.0 * 0.3});
    for (std::size_t i = 0; i < psi.size(); ++i)
        CHECK(std::abs(evolved[i] - phase * psi[i]) <= 1e-10);
}

TEST_CASE("leakage scan: Hermitian designs never leak") {
    auto g = testsup::rng(163);
    std::vector<double> times;
    for (int i = 0; i <= 10; ++i) times.push_back(double(i));
    for (int t = 0; t < 10; ++t) {
        const Complex r = testsup::random_annulus(g, 0.2, 5.0);
        const SpectralSpec spec{testsup::uniform(g, -1, 1), testsup::uniform(g, 0.4, 2.0)};
        const DesignParams p = realize_hermitian(AmplitudeRatio(r), spec);
        const std::size_t q = 2 * (1 + std::size_t(testsup::uniform(g, 0, 3)));
        const BlockOperator op = hermitian_design_op(p, q, q, q / 2, q / 2);
        const Vector psi = embed_ratio(AmplitudeRatio(r), SynchronizedBasis::make(q, q));
        const LeakageReport rep = leakage_scan(op, psi, times);
        REQUIRE(rep.max_leakage <= 1e-10);
        for (double nn : rep.norms) REQUIRE(std::abs(nn - 1.0) <= 1e-11);
    }

    // single time t=0 gives zero leakage
    const DesignParams p = realize_hermitian(AmplitudeRatio(Complex{1, 1}), {0.0, 1.0});
    const BlockOperator op = hermitian_design_op(p, 4, 4, 2, 2);
    const Vector psi = embed_ratio(AmplitudeRatio(Complex{1, 1}), SynchronizedBasis::make(4, 4));
    const LeakageReport r0 = leakage_scan(op, psi, {0.0});
    CHECK(r0.leakage[0] <= 1e-14);
}

TEST_CASE("leakage scan: non-regular block leaks, wrong psi0 rejected") {
    // perturb A by adding one edge: row sums change, S is no longer invariant
    Matrix bad = circulant_regular(6, 2).to_matrix();
    bad(0, 3) = bad(3, 0) = 1.0;
    const BlockOperator op = assemble(CouplingClass::Hermitian, bad,
                                      circulant_regular(6, 2).to_matrix(),
                                      rank_one_coupling(1.0, 6, 6));
    const Vector psi = embed_ratio(AmplitudeRatio(1.0), SynchronizedBasis::make(6, 6));
    std::vector<double> times;
    for (int i = 0; i <= 10; ++i) times.push_back(double(i));
    const LeakageReport rep = leakage_scan(op, psi, times);
    CHECK(rep.max_leakage > 1e-3);

    auto g = testsup::rng(167);
    Vector outside = testsup::random_unit_vector(g, 12);
    CHECK(testsup::throws_code(ErrorCode::InitialStateNotSynchronized,
                               [&] { leakage_scan(op, outside, {0.0}); }));
}

TEST_CASE("evolution block-splitting: perp states never feed back") {
    const DesignParams p = realize_hermitian(AmplitudeRatio(Complex{2, 1}), {0.2, 1.0});
    const BlockOperator op = hermitian_design_op(p, 6, 4, 2, 1);
    const Matrix w = perp_basis(6, 4);
    const Matrix u = sync_basis_matrix(6, 4);
    auto g = testsup::rng(173);
    Vector coef = testsup::random_unit_vector(g, w.cols());
    Vector psi0 = matvec(w, coef);
    psi0 = normalized(std::move(psi0));
    for (double t : {0.7, 2.0, 10.0}) {
        const Vector psi = evolve(op, psi0, t);
        const Vector proj = matvec_adjoint(u, psi);
        CHECK(vec_norm(proj) <= 1e-10);
    }
}

TEST_CASE("spectrum decomposition: sigma(H) = sigma(H|S) U sigma(H|S-perp)") {
    auto g = testsup::rng(179);
    for (int t = 0; t < 10; ++t) {
        const Complex r = testsup::random_annulus(g, 0.2, 5.0);
        const SpectralSpec spec{testsup::uniform(g, -1, 1), testsup::uniform(g, 0.4, 2.0)};
        const DesignParams p = realize_hermitian(AmplitudeRatio(r), spec);
        const std::size_t q = 4 + 2 * std::size_t(testsup::uniform(g, 0, 6));
        const BlockOperator op = hermitian_design_op(p, q, q, q / 3, q / 2);
        const SpectrumReport rep = eig_full(op);
        std::vector<Complex> split = rep.perp_eigenvalues;
        split.push_back(rep.sync_eigenvalues[0]);
        split.push_back(rep.sync_eigenvalues[1]);
        REQUIRE(testsup::multiset_match(rep.eigenvalues, split, 1e-9));

        // simplicity + eigenvector purity when the margin is healthy
        if (rep.collision_margin > 1e-6) {
            const HermitianEig he = eig_hermitian(op.full);
            const Matrix u = sync_basis_matrix(q, q);
            for (const double target : {spec.lambda, spec.lambda + spec.delta}) {
                int count = 0;
                std::size_t idx = 0;
                for (std::size_t i = 0; i < he.values.size(); ++i)
                    if (std::abs(he.values[i] - target) < 1e-8) {
                        ++count;
                        idx = i;
                    }
                REQUIRE(count == 1);
                Vector v(he.vectors.rows());
                for (std::size_t i = 0; i < v.size(); ++i) v[i] = he.vectors(i, idx);
                // ||(I - P_S) v|| <= 1e-9
                const Vector c = matvec_adjoint(u, v);
                Vector proj = matvec(u, c);
                kernels::ops().axpy(proj.size(), Complex{-1.0, 0.0}, v.data(), proj.data());
                REQUIRE(vec_norm(proj) <= 1e-9);
            }
        }
    }
}

TEST_CASE("perturbation_preserves_sync") {
    const std::size_t n = 6, m = 4;
    // regular rewiring: swap edges so row sums stay constant -> dA 1 = 0
    Matrix da(n, n);
    // add edge (0,1),(1,0) and remove (0,2),(2,0); add (2,3),(3,2) remove (1,3),(3,1)
    da(0, 1) = da(1, 0) = 1.0;
    da(0, 2) = da(2, 0) = -1.0;
    da(2, 3) = da(3, 2) = 1.0;
    da(1, 3) = da(3, 1) = -1.0;
    const Matrix db(m, m);
    const Matrix dx(n, m);
    const Matrix dy(m, n);
    const PerturbationCheck ok = perturbation_preserves_sync(da, db, dx, dy);
    CHECK(ok.preserves_sync);
    for (double r : ok.residuals) CHECK(r <= 1e-13);

    // all-zero perturbation
    CHECK(perturbation_preserves_sync(Matrix(n, n), db, dx, dy).preserves_sync);

    // single added edge changes row sums
    Matrix bad(n, n);
    bad(0, 1) = bad(1, 0) = 1.0;
    const PerturbationCheck notok = perturbation_preserves_sync(bad, db, dx, dy);
    CHECK(!notok.preserves_sync);
    CHECK(notok.residuals[0] > 0.1);

    CHECK(testsup::throws_code(ErrorCode::DimensionMismatch, [&] {
        perturbation_preserves_sync(da, db, Matrix(m, n), dy);
    }));
}
