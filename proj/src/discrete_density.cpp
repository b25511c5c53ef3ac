#include "qlbit/discrete_density.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "qlbit/coupling_blocks.hpp"
#include "qlbit/errors.hpp"
#include "qlbit/regular_graphs.hpp"

namespace qlbit {

namespace {

std::size_t ceil_even(std::int64_t v) {
    if (v <= 2) return 2;
    return static_cast<std::size_t>(v % 2 == 0 ? v : v + 1);
}

void exact_fail(const std::string& what) { throw Error(ErrorCode::ExactCheckFailed, what); }

// Neighbors of vertex i in the circulant k-regular graph on Z_q, matching
// circulant_regular's connection set.
template <typename F>
void for_each_circulant_neighbor(std::size_t q, std::size_t k, std::size_t i, F&& f) {
    for (std::size_t s = 1; s <= k / 2; ++s) {
        f((i + s) % q);
        f((i + q - s) % q);
    }
    if (k % 2 == 1) f((i + q / 2) % q);
}

// Entry rule of matching_coupling: row i holds sign(c) at columns i..i+|c|-1
// and i*sign(d) at the next |d| columns (mod q).
struct MatchingRule {
    std::int64_t sc, sd;
    std::size_t nc, nd;
    explicit MatchingRule(GaussianInt l)
        : sc((l.c > 0) - (l.c < 0)),
          sd((l.d > 0) - (l.d < 0)),
          nc(static_cast<std::size_t>(std::abs(l.c))),
          nd(static_cast<std::size_t>(std::abs(l.d))) {}

    template <typename F>
    void for_each_row_entry(std::size_t q, std::size_t i, F&& f) const {
        for (std::size_t j = 0; j < nc; ++j) f((i + j) % q, GaussianInt{sc, 0});
        for (std::size_t j = nc; j < nc + nd; ++j) f((i + j) % q, GaussianInt{0, sd});
    }
};

} // namespace

DiscreteDesign discrete_design_from_ratio(GaussianInt z, GaussianInt w) {
    if (z.is_zero() || w.is_zero())
        throw Error(ErrorCode::InvalidArgument, "discrete design needs nonzero z and w");
    DiscreteDesign d;
    d.z = z;
    d.w = w;
    d.lambda = 0;
    d.tau = z.norm();
    d.l = w * z.conj();
    d.kA = z.norm();
    d.kB = w.norm();
    d.delta = d.kA + d.kB;

    // Eigen equations at lambda = 0, cleared of denominators:
    // kA*w - l*z = 0 and kB*z - conj(l)*w = 0, checked exactly in Z[i].
    const GaussianInt eq1 = GaussianInt{d.kA} * w - d.l * z;
    const GaussianInt eq2 = GaussianInt{d.kB} * z - d.l.conj() * w;
    if (!eq1.is_zero() || !eq2.is_zero())
        exact_fail("discrete eigen equations violated (arithmetic bug)");

    d.q = minimal_even_q(d);
    return d;
}

std::size_t minimal_even_q(const DiscreteDesign& d) {
    const std::int64_t lat = std::abs(d.l.c) + std::abs(d.l.d);
    const std::int64_t deg = std::max(d.kA, d.kB) + 1; // need k <= q-1
    return std::max(ceil_even(lat), ceil_even(deg));
}

double projective_distance(Complex r1, Complex r2) {
    return std::abs(r1 - r2) / std::sqrt((1.0 + std::norm(r1)) * (1.0 + std::norm(r2)));
}

double projective_distance_to_infinity(Complex r) {
    return 1.0 / std::sqrt(1.0 + std::norm(r));
}

ApproximationResult approximate_ratio(Complex target, double epsilon) {
    if (target == Complex{}) throw Error(ErrorCode::InvalidArgument, "target ratio must be nonzero");
    if (!(epsilon > 0.0)) throw Error(ErrorCode::InvalidArgument, "epsilon must be positive");
    if (!is_finite(target) || std::abs(target) > 1e12 || std::abs(target) < 1e-12)
        throw Error(ErrorCode::InvalidArgument, "target modulus must lie in [1e-12, 1e12]");

    struct Candidate {
        GaussianInt z, w;
        double err;
        std::int64_t maxnorm;
    };

    // Multiplying (z, w) by a unit keeps the ratio and the norms; exactly one
    // unit rotates w into the quadrant {Re > 0, Im >= 0}, making the returned
    // pair canonical.
    auto canonicalize = [](GaussianInt& z, GaussianInt& w) {
        const GaussianInt units[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
        for (const GaussianInt& u : units) {
            const GaussianInt wu = w * u;
            if (wu.c > 0 && wu.d >= 0) {
                z = z * u;
                w = wu;
                return;
            }
        }
    };

    // Density guarantees termination; the cap only guards the integer range.
    for (std::int64_t bound = 8; bound <= (std::int64_t(1) << 44); bound *= 2) {
        std::vector<Candidate> admissible;
        const std::int64_t wmax = static_cast<std::int64_t>(std::floor(std::sqrt(double(bound))));
        for (std::int64_t wc = -wmax; wc <= wmax; ++wc) {
            for (std::int64_t wd = -wmax; wd <= wmax; ++wd) {
                GaussianInt w{wc, wd};
                if (w.is_zero() || w.norm() > bound) continue;
                const Complex prod = target * w.to_complex();
                GaussianInt z{static_cast<std::int64_t>(std::llround(prod.real())),
                              static_cast<std::int64_t>(std::llround(prod.imag()))};
                if (z.is_zero()) continue;
                canonicalize(z, w);
                const GaussianRational r{z, w};
                const double err = projective_distance(r.to_complex(), target);
                if (err < epsilon) admissible.push_back({z, w, err, std::max(z.norm(), w.norm())});
            }
        }
        if (admissible.empty()) continue;

        const Candidate best = *std::min_element(
            admissible.begin(), admissible.end(), [](const Candidate& a, const Candidate& b) {
                return std::make_tuple(a.maxnorm, a.w.norm(), a.w.c, a.w.d) <
                       std::make_tuple(b.maxnorm, b.w.norm(), b.w.c, b.w.d);
            });

        ApproximationResult out;
        out.target = target;
        out.approx = GaussianRational{best.z, best.w};
        out.projective_error = best.err;
        out.design = discrete_design_from_ratio(best.z, best.w);
        return out;
    }
    throw Error(ErrorCode::SolverFailure, "denominator sweep exhausted the integer range");
}

ExactVerifyReport exact_verify_discrete(const DiscreteDesign& d) {
    if (d.q == 0 || d.q % 2 != 0)
        throw Error(ErrorCode::InvalidArgument, "design needs an even q > 0");
    const std::size_t q = d.q;
    if (!lattice_member(d.l, q))
        throw Error(ErrorCode::LatticeViolation, "coupling outside the lattice L_q");
    if (d.kA < 0 || d.kB < 0 || d.kA > std::int64_t(q) - 1 || d.kB > std::int64_t(q) - 1)
        throw Error(ErrorCode::DegreeOutOfRange, "regular degrees must fit in [0, q-1]");
    // q even makes q*k even for every k; the circulant generator would throw
    // ParityViolation otherwise.

    const MatchingRule rule(d.l);
    const std::size_t kA = static_cast<std::size_t>(d.kA);
    const std::size_t kB = static_cast<std::size_t>(d.kB);

    ExactVerifyReport rep;
    rep.q = q;

    // Streaming row walk off the generating rules: regularity of A and B,
    // disjointness + row sums of C, and H psi = 0 per component for the
    // unnormalized synchronized eigenvector psi = (w 1_q, z 1_q).
    std::vector<GaussianInt> colsum(q, GaussianInt{});
    std::vector<std::uint32_t> stamp(q, 0);
    for (std::size_t i = 0; i < q; ++i) {
        std::size_t degA = 0, degB = 0;
        for_each_circulant_neighbor(q, kA, i, [&](std::size_t) { ++degA; });
        for_each_circulant_neighbor(q, kB, i, [&](std::size_t) { ++degB; });
        if (degA != kA) exact_fail("circulant row degree mismatch in A");
        if (degB != kB) exact_fail("circulant row degree mismatch in B");

        GaussianInt rowsum{};
        std::size_t hits = 0;
        rule.for_each_row_entry(q, i, [&](std::size_t col, GaussianInt v) {
            if (stamp[col] == i + 1) exact_fail("matching overlap: entry written twice");
            stamp[col] = static_cast<std::uint32_t>(i + 1);
            if (!(v == GaussianInt{1} || v == GaussianInt{-1} || v == GaussianInt{0, 1} ||
                  v == GaussianInt{0, -1}))
                exact_fail("entry outside mu4+0");
            rowsum += v;
            colsum[col] += v;
            ++hits;
        });
        if (hits != rule.nc + rule.nd) exact_fail("matching row population mismatch");
        if (!(rowsum == d.l)) exact_fail("coupling row sum differs from l");

        // Upper component i of H psi: w * (A row sum) - l_rowsum * z = w kA - l z.
        const GaussianInt upper = d.w * GaussianInt{d.kA} - rowsum * d.z;
        // Lower component i: z * (B row sum) - conj(l column sum at i) * w; the
        // column sums are verified below, rows of C^dagger are conjugated
        // columns of C.
        if (!upper.is_zero()) exact_fail("upper block of H psi nonzero");
        ++rep.rows_checked;
    }
    for (std::size_t j = 0; j < q; ++j) {
        if (!(colsum[j] == d.l)) exact_fail("coupling column sum differs from l");
        const GaussianInt lower = d.z * GaussianInt{d.kB} - colsum[j].conj() * d.w;
        if (!lower.is_zero()) exact_fail("lower block of H psi nonzero");
    }

    // Small designs additionally verify against the materialized objects, so
    // the streaming rule and the dense constructors cannot drift apart.
    if (q <= 256) {
        const RegularGraph ga = circulant_regular(q, kA);
        const RegularGraph gb = circulant_regular(q, kB);
        if (verify_regular(ga) != kA || verify_regular(gb) != kB)
            exact_fail("dense circulant verification failed");
        const CouplingBlock c = matching_coupling(d.l, q);
        const RegularityReport reg = algebraic_regularity(c); // exact, tol 0
        if (reg.residual != 0.0) exact_fail("dense coupling residual nonzero");
        for (std::size_t i = 0; i < q; ++i) {
            // H psi upper: sum_j A(i,j) w - sum_j C(i,j) z, entry by entry.
            GaussianInt accA{};
            for (std::size_t j = 0; j < q; ++j)
                if (ga.at(i, j)) accA += d.w;
            GaussianInt accC{};
            for (std::size_t j = 0; j < q; ++j) accC += c.exact_at(i, j) * d.z;
            if (!(accA - accC).is_zero()) exact_fail("dense upper H psi nonzero");

            GaussianInt accB{};
            for (std::size_t j = 0; j < q; ++j)
                if (gb.at(i, j)) accB += d.z;
            GaussianInt accCt{};
            for (std::size_t j = 0; j < q; ++j) accCt += c.exact_at(j, i).conj() * d.w;
            if (!(accB - accCt).is_zero()) exact_fail("dense lower H psi nonzero");
        }
        rep.dense_cross_checked = true;
    }

    rep.pass = true;
    return rep;
}

} // namespace qlbit
