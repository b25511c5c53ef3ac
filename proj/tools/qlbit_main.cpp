// Command-line front end: synthesize designs, assemble and export operators,
// verify matrix files, scan obstruction loci, run time evolution, and drive
// the exact discrete pipeline.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qlbit/discrete_density.hpp"
#include "qlbit/io.hpp"
#include "qlbit/spectral_verify.hpp"

using namespace qlbit;

namespace {

constexpr int kExitRealizable = 0;
constexpr int kExitChecksFailed = 1;
constexpr int kExitObstructed = 2;
constexpr int kExitDegenerate = 3;
constexpr int kExitUsage = 64;
constexpr int kExitNotSynchronized = 65;
constexpr int kExitIo = 66;

double default_tol() {
    if (const char* env = std::getenv("QLBIT_TOL")) {
        try {
            return std::stod(env);
        } catch (...) {
            std::cerr << "warning: ignoring malformed QLBIT_TOL\n";
        }
    }
    return 1e-10;
}

CouplingClass parse_class(const std::string& s) {
    for (CouplingClass c : {CouplingClass::ComplexSymmetric, CouplingClass::RealSymComplexDetuning,
                            CouplingClass::Hermitian, CouplingClass::AsymmetricCommonK,
                            CouplingClass::Generalized})
        if (s == to_string(c)) return c;
    throw Error(ErrorCode::ParseError,
                "unknown class '" + s +
                    "' (expected complex-symmetric, real-coupling, hermitian, asymmetric, generalized)");
}

const char* verdict_name(Realizability k) {
    switch (k) {
        case Realizability::Realizable: return "realizable";
        case Realizability::Obstructed: return "obstructed";
        case Realizability::DegenerateOnly: return "degenerate-only";
    }
    return "?";
}

struct TargetArgs {
    std::string r_expr;
    std::string amplitudes; // "w1, w2"
    std::string state;      // H or T

    std::pair<AmplitudeRatio, std::optional<TargetState>> resolve() const {
        const int given = int(!r_expr.empty()) + int(!amplitudes.empty()) + int(!state.empty());
        if (given != 1)
            throw Error(ErrorCode::ParseError, "give exactly one of --r, --amplitudes, --state");
        if (!r_expr.empty()) return {AmplitudeRatio(io::parse_complex(r_expr)), std::nullopt};
        if (!state.empty()) {
            if (state == "H" || state == "h") {
                const TargetState s = magic_state(MagicState::H);
                return {ratio_from_state(s), s};
            }
            if (state == "T" || state == "t") {
                const TargetState s = magic_state(MagicState::T);
                return {ratio_from_state(s), s};
            }
            throw Error(ErrorCode::ParseError, "--state takes H or T");
        }
        const auto comma = amplitudes.find(',');
        if (comma == std::string::npos)
            throw Error(ErrorCode::ParseError, "--amplitudes needs 'w1,w2'");
        const TargetState s =
            TargetState::normalized(io::parse_complex(amplitudes.substr(0, comma)),
                                    io::parse_complex(amplitudes.substr(comma + 1)));
        return {ratio_from_state(s), s};
    }
};

DesignParams realize_for_class(CouplingClass cls, const AmplitudeRatio& r, const SpectralSpec& spec,
                               double tau_a, double tol) {
    switch (cls) {
        case CouplingClass::ComplexSymmetric: return realize_complex_symmetric(r, spec, tol);
        case CouplingClass::RealSymComplexDetuning: return realize_real_coupling(r, spec, tol);
        case CouplingClass::Hermitian: return realize_hermitian(r, spec);
        case CouplingClass::AsymmetricCommonK: return realize_asymmetric_common_k(r, spec);
        case CouplingClass::Generalized: return realize_generalized(r, spec, tau_a);
    }
    throw Error(ErrorCode::InvalidArgument, "unreachable class");
}

// Base circulant degree for a sync-shifted diagonal block: nearest admissible
// integer degree, parity-corrected for odd vertex counts.
std::size_t base_degree(std::size_t q, Complex k) {
    const long long want = std::llround(std::abs(k.real()));
    std::size_t k0 = static_cast<std::size_t>(std::clamp<long long>(want, 0, (long long)q - 1));
    if ((q * k0) % 2 != 0) k0 -= 1; // odd product needs k0 odd, so k0 >= 1 here
    return k0;
}

BlockOperator assemble_continuous(const DesignParams& p, std::size_t n, std::size_t m) {
    const Matrix a = sync_shifted_block(circulant_regular(n, base_degree(n, p.kA)), p.kA);
    const Matrix b = sync_shifted_block(circulant_regular(m, base_degree(m, p.kB)), p.kB);
    CouplingBlock x = rank_one_coupling(p.lA, n, m);
    switch (p.cls) {
        case CouplingClass::Hermitian:
        case CouplingClass::ComplexSymmetric:
        case CouplingClass::RealSymComplexDetuning:
            return assemble(p.cls, a, b, std::move(x));
        default:
            return assemble(p.cls, a, b, std::move(x), rank_one_coupling(p.lB, m, n));
    }
}

void print_params(const DesignParams& p) {
    std::cout << "  class:  " << to_string(p.cls) << "\n";
    std::cout << "  kA:     " << io::format_complex(p.kA) << "\n";
    std::cout << "  kB:     " << io::format_complex(p.kB) << "\n";
    std::cout << "  lA:     " << io::format_complex(p.lA) << "\n";
    std::cout << "  lB:     " << io::format_complex(p.lB) << "\n";
    std::cout << "  tauA:   " << io::format_complex(p.tauA) << "\n";
    std::cout << "  tauB:   " << io::format_complex(p.tauB) << "\n";
}

void print_discrete(const DiscreteDesign& d) {
    std::cout << "  z:      " << d.z << "\n";
    std::cout << "  w:      " << d.w << "\n";
    std::cout << "  l:      " << d.l << "\n";
    std::cout << "  kA:     " << d.kA << "\n";
    std::cout << "  kB:     " << d.kB << "\n";
    std::cout << "  tau:    " << d.tau << "\n";
    std::cout << "  delta:  " << d.delta << "\n";
    std::cout << "  q:      " << d.q << "\n";
}

void export_operator(const std::string& prefix, const BlockOperator& op, const SpectralSpec& spec,
                     Complex r, const DesignParams& p) {
    io::write_matrix_market(prefix + ".mtx", op.full);
    io::Sidecar sc;
    sc.n = op.n;
    sc.m = op.m;
    sc.cls = op.cls;
    sc.params = p;
    sc.lambda = spec.lambda;
    sc.delta = spec.delta;
    sc.r = r;
    io::write_sidecar(prefix + ".mtx.json", sc);
    std::cout << "wrote " << prefix << ".mtx and " << prefix << ".mtx.json\n";
}

int cmd_synthesize(CouplingClass cls, const TargetArgs& target, double lambda, double delta,
                   double tau_a, bool zero_gap, double zg_coupling, bool discrete, double epsilon,
                   bool exact_out, std::size_t q_opt, std::size_t n_opt, std::size_t m_opt,
                   const std::string& out, double tol, double shift) {
    const auto [ratio, state] = target.resolve();
    const Complex r = ratio.value;
    const TaxonomyVerdict verdict = taxonomy_verdict(cls, ratio, tol);

    std::cout << "request:\n";
    std::cout << "  class:  " << to_string(cls) << "\n";
    std::cout << "  r:      " << io::format_complex(r) << "\n";
    if (state) {
        std::cout << "  omega1: " << io::format_complex(state->omega1) << "\n";
        std::cout << "  omega2: " << io::format_complex(state->omega2) << "\n";
    }
    std::cout << "  lambda: " << lambda << "\n  delta:  " << delta << "\n";
    std::cout << "verdict:  " << verdict_name(verdict.kind)
              << (verdict.locus.empty() ? "" : " (" + verdict.locus + ")") << "\n";

    if (verdict.kind == Realizability::Obstructed) return kExitObstructed;

    if (verdict.kind == Realizability::DegenerateOnly) {
        if (zero_gap) {
            const DesignParams p = realize_zero_gap(cls, ratio, lambda, zg_coupling, tol);
            std::cout << "zero-gap design (both synchronized eigenvalues at lambda):\n";
            print_params(p);
        } else {
            std::cout << "hint: --zero-gap emits the degenerate construction\n";
        }
        return kExitDegenerate;
    }

    if (delta == 0.0)
        throw Error(ErrorCode::InvalidArgument, "delta must be nonzero (or use --zero-gap at r = +-i)");
    const SpectralSpec spec{lambda, delta};
    const DesignParams p = realize_for_class(cls, ratio, spec, tau_a, tol);
    std::cout << "design:\n";
    print_params(p);

    const EffectiveBlock blk = reduce(p);
    const auto mv = blk.apply(1.0, r);
    const double resid = std::sqrt(std::norm(mv[0] - lambda * 1.0) + std::norm(mv[1] - lambda * r));
    std::cout << "  block eigen-residual: " << resid << "\n";

    std::optional<DiscreteDesign> dd;
    if (discrete) {
        if (cls != CouplingClass::Hermitian)
            throw Error(ErrorCode::InvalidArgument, "--discrete applies to the hermitian class");
        ApproximationResult ar = approximate_ratio(r, epsilon);
        if (q_opt != 0) {
            if (q_opt % 2 != 0 || q_opt < ar.design.q)
                throw Error(ErrorCode::InvalidArgument, "--q must be even and >= the minimal q");
            ar.design.q = q_opt;
        }
        dd = ar.design;
        std::cout << "discrete design (projective error " << ar.projective_error << "):\n";
        print_discrete(*dd);
        const ExactVerifyReport rep = exact_verify_discrete(*dd);
        std::cout << "  exact verification: " << (rep.pass ? "pass" : "FAIL") << " ("
                  << rep.rows_checked << " rows)\n";
        if (exact_out && !out.empty()) {
            io::write_exact_design(out + ".exact.json", *dd);
            std::cout << "wrote " << out << ".exact.json\n";
        }
    }

    if (!out.empty()) {
        BlockOperator op = [&] {
            if (dd) {
                const std::size_t q = dd->q;
                return assemble(CouplingClass::Hermitian, circulant_regular(q, std::size_t(dd->kA)),
                                circulant_regular(q, std::size_t(dd->kB)),
                                matching_coupling(dd->l, q));
            }
            const std::size_t n = n_opt ? n_opt : (q_opt ? q_opt : 4);
            const std::size_t m = m_opt ? m_opt : (q_opt ? q_opt : 4);
            return assemble_continuous(p, n, m);
        }();
        SpectralSpec espec = dd ? SpectralSpec{0.0, double(dd->delta)} : spec;
        if (shift != 0.0) {
            // identity post-shift: moves the whole spectrum, keeps the gap
            op = diagonal_shift(std::move(op), Complex{shift, 0.0});
            espec.lambda += shift;
            std::cout << "applied diagonal shift " << shift << " (lambda now " << espec.lambda
                      << ")\n";
        }
        const Complex er = dd ? dd->ratio().to_complex() : r;
        DesignParams ep =
            dd ? realize_hermitian(AmplitudeRatio(er), SpectralSpec{0.0, double(dd->delta)}) : p;
        if (shift != 0.0) {
            ep.kA += shift;
            ep.kB += shift;
        }
        export_operator(out, op, espec, er, ep);

        const Vector psi = embed_ratio(AmplitudeRatio(er), SynchronizedBasis::make(op.n, op.m));
        const EigenpairCheck chk = verify_eigenpair(op, psi, Complex{espec.lambda, 0.0});
        std::cout << "  operator eigen-residual: " << chk.residual << " ("
                  << (chk.pass ? "pass" : "FAIL") << ")\n";
    }
    return kExitRealizable;
}

int cmd_verify(const std::string& file, const std::string& sidecar_path, const std::string& psi_path,
               const std::string& r_expr, std::optional<double> lambda_opt,
               std::optional<double> delta_opt, double tol, const std::string& spectrum_csv,
               std::size_t size_cap, double collision_threshold) {
    const Matrix full = io::read_matrix_market(file);
    const io::Sidecar sc = io::read_sidecar(sidecar_path.empty() ? file + ".json" : sidecar_path);
    const RecoveredOperator rec = block_operator_from_full(full, sc.n, sc.m, sc.cls);
    const BlockOperator& op = rec.op;

    bool all_pass = rec.class_structure_ok;
    std::cout << "operator: " << file << " (" << op.n << "+" << op.m << ", class "
              << to_string(sc.cls) << ")\n";
    if (!rec.class_structure_ok)
        std::cout << "  class structure: VIOLATED (analyzing as generalized)\n";

    const double lambda = lambda_opt ? *lambda_opt : sc.lambda.value_or(0.0);
    const double delta = delta_opt ? *delta_opt : sc.delta.value_or(1.0);

    Vector psi;
    if (!psi_path.empty()) {
        psi = io::read_vector_market(psi_path);
    } else {
        Complex r;
        if (!r_expr.empty()) r = io::parse_complex(r_expr);
        else if (sc.r) r = *sc.r;
        else
            throw Error(ErrorCode::InvalidArgument,
                        "no target state: give --psi or --r, or a sidecar with r");
        psi = embed_ratio(AmplitudeRatio(r), SynchronizedBasis::make(op.n, op.m));
    }
    const EigenpairCheck chk = verify_eigenpair(op, psi, Complex{lambda, 0.0}, 1e-11);
    std::cout << "  eigenpair residual:   " << chk.residual << " (threshold " << chk.threshold
              << ", " << (chk.pass ? "pass" : "FAIL") << ")\n";
    all_pass = all_pass && chk.pass;

    const SyncRestriction sr = restrict_to_sync(op);
    const double inv_tol = tol * (1.0 + frobenius_norm(op.full));
    std::cout << "  invariance residual:  " << sr.invariance_residual << " ("
              << (sr.invariance_residual <= inv_tol ? "pass" : "FAIL") << ")\n";
    all_pass = all_pass && sr.invariance_residual <= inv_tol;

    const ReducingCheck rc = reducing_check(op);
    std::cout << "  cross S->S_perp norm: " << rc.cross_s_to_perp << "\n";
    std::cout << "  cross S_perp->S norm: " << rc.cross_perp_to_s << "\n";
    if (sc.cls == CouplingClass::Hermitian && rec.class_structure_ok) {
        const double red_tol = 1e-12 * (1.0 + frobenius_norm(op.full));
        const bool red_ok = rc.cross_s_to_perp <= red_tol && rc.cross_perp_to_s <= red_tol;
        std::cout << "  reducing subspace:    " << (red_ok ? "pass" : "FAIL") << "\n";
        all_pass = all_pass && red_ok;
    }

    if (op.n + op.m <= size_cap) {
        const SpectrumReport rep = eig_full(op, size_cap);
        std::cout << "  sync eigenvalues:     " << io::format_complex(rep.sync_eigenvalues[0])
                  << ", " << io::format_complex(rep.sync_eigenvalues[1]) << "\n";
        std::cout << "  max |Im eigenvalue|:  " << rep.max_imag << "\n";
        const double margin = collision_check(rep, {lambda, delta});
        std::cout << "  collision margin:     " << margin
                  << (margin <= collision_threshold ? "  [collision flagged]" : "") << "\n";

        if (!spectrum_csv.empty()) {
            std::ofstream csv(spectrum_csv);
            if (!csv) throw Error(ErrorCode::IoError, "cannot write " + spectrum_csv);
            csv << "re,im,sector\n";
            csv.precision(17);
            for (const Complex& v : rep.sync_eigenvalues)
                csv << v.real() << "," << v.imag() << ",sync\n";
            for (const Complex& v : rep.perp_eigenvalues)
                csv << v.real() << "," << v.imag() << ",perp\n";
            std::cout << "wrote " << spectrum_csv << "\n";
        }
    } else {
        std::cout << "  spectrum: skipped, dimension " << (op.n + op.m) << " above --size-cap "
                  << size_cap << "\n";
        if (!spectrum_csv.empty())
            std::cout << "  (no spectrum CSV written; raise --size-cap to enable)\n";
    }

    std::cout << (all_pass ? "verdict: PASS" : "verdict: FAIL") << "\n";
    return all_pass ? kExitRealizable : kExitChecksFailed;
}

int cmd_scan(CouplingClass cls, double re_min, double re_max, double im_min, double im_max,
             std::size_t steps, std::size_t samples, double ann_min, double ann_max,
             std::uint64_t seed, double lambda, double delta, double tol, const std::string& out) {
    std::ofstream csv(out);
    if (!csv) throw Error(ErrorCode::IoError, "cannot write " + out);
    csv << "re,im,verdict,residual\n";
    csv.precision(17);

    auto emit = [&](Complex r) {
        if (r == Complex{}) {
            csv << r.real() << "," << r.imag() << ",undefined,\n";
            return;
        }
        const AmplitudeRatio ratio(r);
        const TaxonomyVerdict v = taxonomy_verdict(cls, ratio, tol);
        double residual = std::nan("");
        if (v.kind == Realizability::Realizable) {
            try {
                const DesignParams p =
                    realize_for_class(cls, ratio, {lambda, delta}, 0.5 * delta, tol);
                const EffectiveBlock m = reduce(p);
                const auto mv = m.apply(1.0, r);
                residual = std::sqrt(std::norm(mv[0] - lambda) + std::norm(mv[1] - lambda * r)) /
                           (1.0 + m.frob());
            } catch (const Error&) {
                residual = std::nan("");
            }
        }
        csv << r.real() << "," << r.imag() << "," << verdict_name(v.kind) << ",";
        if (std::isnan(residual)) csv << "\n";
        else csv << residual << "\n";
    };

    if (samples > 0) {
        std::mt19937_64 g(seed);
        std::uniform_real_distribution<double> phase(0.0, 2.0 * 3.141592653589793);
        std::uniform_real_distribution<double> logmod(std::log(ann_min), std::log(ann_max));
        for (std::size_t s = 0; s < samples; ++s) emit(std::polar(std::exp(logmod(g)), phase(g)));
    } else {
        for (std::size_t i = 0; i < steps; ++i)
            for (std::size_t j = 0; j < steps; ++j) {
                const double re =
                    steps == 1 ? re_min : re_min + (re_max - re_min) * double(i) / double(steps - 1);
                const double im =
                    steps == 1 ? im_min : im_min + (im_max - im_min) * double(j) / double(steps - 1);
                emit(Complex{re, im});
            }
    }
    std::cout << "wrote " << out << "\n";
    return kExitRealizable;
}

int cmd_evolve(const std::string& file, const std::string& sidecar_path, const std::string& psi_path,
               const std::string& r_expr, double t_max, std::size_t steps, bool allow_any,
               const std::string& out) {
    const Matrix full = io::read_matrix_market(file);
    const io::Sidecar sc = io::read_sidecar(sidecar_path.empty() ? file + ".json" : sidecar_path);
    const RecoveredOperator rec = block_operator_from_full(full, sc.n, sc.m, sc.cls);
    const BlockOperator& op = rec.op;

    Vector psi0;
    if (!psi_path.empty()) psi0 = io::read_vector_market(psi_path);
    else {
        Complex r;
        if (!r_expr.empty()) r = io::parse_complex(r_expr);
        else if (sc.r) r = *sc.r;
        else
            throw Error(ErrorCode::InvalidArgument,
                        "no initial state: give --psi or --r, or a sidecar with r");
        psi0 = embed_ratio(AmplitudeRatio(r), SynchronizedBasis::make(op.n, op.m));
    }

    std::vector<double> times;
    for (std::size_t i = 0; i <= steps; ++i)
        times.push_back(steps == 0 ? 0.0 : t_max * double(i) / double(steps));

    LeakageReport rep;
    if (allow_any) {
        // same scan without the synchronized-initial-state requirement
        const SynchronizedBasis basis = SynchronizedBasis::make(op.n, op.m);
        rep.times = times;
        for (double t : times) {
            const Vector psi = evolve(op, psi0, t);
            Vector d = psi;
            const Complex c0 = vdot(basis.ket0, psi);
            const Complex c1 = vdot(basis.ket1, psi);
            kernels::ops().axpy(d.size(), -c0, basis.ket0.data(), d.data());
            kernels::ops().axpy(d.size(), -c1, basis.ket1.data(), d.data());
            rep.leakage.push_back(vec_norm(d));
            rep.norms.push_back(vec_norm(psi));
            rep.max_leakage = std::max(rep.max_leakage, rep.leakage.back());
        }
    } else {
        rep = leakage_scan(op, psi0, times);
    }

    std::ofstream csv(out);
    if (!csv) throw Error(ErrorCode::IoError, "cannot write " + out);
    csv << "t,leakage,norm\n";
    csv.precision(17);
    for (std::size_t i = 0; i < rep.times.size(); ++i)
        csv << rep.times[i] << "," << rep.leakage[i] << "," << rep.norms[i] << "\n";
    std::cout << "wrote " << out << " (max leakage " << rep.max_leakage << ")\n";
    return kExitRealizable;
}

int cmd_discrete(const std::string& z_str, const std::string& w_str, const std::string& target_expr,
                 double epsilon, std::size_t q_opt, const std::string& out, const std::string& in) {
    DiscreteDesign d;
    if (!in.empty()) {
        d = io::read_exact_design(in);
        std::cout << "loaded design from " << in << "\n";
    } else if (!z_str.empty() && !w_str.empty()) {
        d = discrete_design_from_ratio(io::parse_gaussian_int(z_str), io::parse_gaussian_int(w_str));
    } else if (!target_expr.empty()) {
        const ApproximationResult ar = approximate_ratio(io::parse_complex(target_expr), epsilon);
        d = ar.design;
        std::cout << "approximation error (projective): " << ar.projective_error << "\n";
    } else {
        throw Error(ErrorCode::ParseError, "give --z and --w, or --target, or --in");
    }
    if (q_opt != 0) {
        if (q_opt % 2 != 0 || q_opt < minimal_even_q(d))
            throw Error(ErrorCode::InvalidArgument, "--q must be even and >= the minimal q");
        d.q = q_opt;
    }
    std::cout << "design:\n";
    print_discrete(d);
    const ExactVerifyReport rep = exact_verify_discrete(d);
    std::cout << "exact verification: " << (rep.pass ? "PASS" : "FAIL") << " (" << rep.rows_checked
              << " rows, dense cross-check " << (rep.dense_cross_checked ? "yes" : "no") << ")\n";
    if (!out.empty()) {
        io::write_exact_design(out, d);
        std::cout << "wrote " << out << "\n";
    }
    return rep.pass ? kExitRealizable : kExitChecksFailed;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"synthesis and verification of synchronized two-level graph operators"};
    app.require_subcommand(1);

    auto* syn = app.add_subcommand("synthesize", "derive design parameters for a target state");
    std::string syn_class;
    TargetArgs syn_target;
    double syn_lambda = 0.0, syn_delta = 1.0, syn_tau_frac = 0.5, syn_zg_coupling = 1.0;
    double syn_eps = 1e-3, syn_tol = default_tol();
    bool syn_zero_gap = false, syn_discrete = false, syn_exact = false;
    std::size_t syn_q = 0, syn_n = 0, syn_m = 0;
    std::string syn_out;
    syn->add_option("class", syn_class, "coupling class")->required();
    syn->add_option("--r", syn_target.r_expr, "target amplitude ratio (expression)");
    syn->add_option("--amplitudes", syn_target.amplitudes, "target amplitudes 'w1,w2' (normalized)");
    syn->add_option("--state", syn_target.state, "named target: H or T");
    syn->add_option("--lambda", syn_lambda, "designed eigenvalue");
    syn->add_option("--delta", syn_delta, "signed spectral offset");
    syn->add_option("--tau-a", syn_tau_frac, "tau_A as a fraction of delta (generalized class)");
    syn->add_flag("--zero-gap", syn_zero_gap, "emit the degenerate zero-gap construction at r = +-i");
    syn->add_option("--coupling", syn_zg_coupling, "free real coupling of the zero-gap construction");
    syn->add_flag("--discrete", syn_discrete, "derive an exact discrete design (hermitian class)");
    syn->add_option("--epsilon", syn_eps, "projective tolerance for --discrete");
    syn->add_flag("--exact", syn_exact, "also write the exact Z[i] JSON next to --out");
    syn->add_option("--q", syn_q, "block size for export (even; discrete: >= minimal q)");
    syn->add_option("--n", syn_n, "rows of block A for continuous export");
    syn->add_option("--m", syn_m, "rows of block B for continuous export");
    syn->add_option("--out", syn_out, "export prefix (.mtx + .mtx.json)");
    syn->add_option("--tol", syn_tol, "reality tolerance for obstruction checks");
    double syn_shift = 0.0;
    syn->add_option("--shift", syn_shift, "add shift*I to the exported operator");

    auto* ver = app.add_subcommand("verify", "verify a matrix file against its design claims");
    std::string ver_file, ver_sidecar, ver_psi, ver_r, ver_csv;
    double ver_tol = default_tol(), ver_lambda_val = 0.0, ver_delta_val = 0.0;
    std::size_t ver_cap = kDefaultSizeCap;
    double ver_collision = 1e-6;
    ver->add_option("matrix", ver_file, "Matrix Market file")->required();
    ver->add_option("--size-cap", ver_cap, "largest dimension for the full eigensolve");
    ver->add_option("--collision-threshold", ver_collision, "margin below which a collision is flagged");
    ver->add_option("--sidecar", ver_sidecar, "sidecar JSON (default: <matrix>.json)");
    ver->add_option("--psi", ver_psi, "state vector file (Matrix Market array)");
    ver->add_option("--r", ver_r, "target ratio expression (embeds the synchronized state)");
    ver->add_option("--lambda", ver_lambda_val, "designed eigenvalue (default: sidecar)");
    ver->add_option("--delta", ver_delta_val, "signed offset (default: sidecar)");
    ver->add_option("--tol", ver_tol, "tolerance for the invariance check");
    ver->add_option("--spectrum-csv", ver_csv, "dump the spectrum (CSV)");

    auto* scn = app.add_subcommand("scan", "map realizability over the ratio plane");
    std::string scn_class, scn_out;
    double scn_re_min = -2, scn_re_max = 2, scn_im_min = -2, scn_im_max = 2;
    double scn_lambda = 0.0, scn_delta = 1.0, scn_tol = default_tol();
    double scn_ann_min = 0.05, scn_ann_max = 20.0;
    std::size_t scn_steps = 101, scn_samples = 0;
    std::uint64_t scn_seed = 12345;
    scn->add_option("class", scn_class, "coupling class")->required();
    scn->add_option("--re-min", scn_re_min);
    scn->add_option("--re-max", scn_re_max);
    scn->add_option("--im-min", scn_im_min);
    scn->add_option("--im-max", scn_im_max);
    scn->add_option("--steps", scn_steps, "grid points per axis");
    scn->add_option("--samples", scn_samples, "random annulus samples instead of a grid");
    scn->add_option("--annulus-min", scn_ann_min);
    scn->add_option("--annulus-max", scn_ann_max);
    scn->add_option("--seed", scn_seed, "seed for randomized scans");
    scn->add_option("--lambda", scn_lambda);
    scn->add_option("--delta", scn_delta);
    scn->add_option("--tol", scn_tol);
    scn->add_option("--out", scn_out, "output CSV")->required();

    auto* evo = app.add_subcommand("evolve", "time evolution and leakage of a stored operator");
    std::string evo_file, evo_sidecar, evo_psi, evo_r, evo_out;
    double evo_tmax = 10.0;
    std::size_t evo_steps = 20;
    bool evo_any = false;
    evo->add_option("matrix", evo_file, "Matrix Market file")->required();
    evo->add_option("--sidecar", evo_sidecar, "sidecar JSON (default: <matrix>.json)");
    evo->add_option("--psi", evo_psi, "initial state file");
    evo->add_option("--r", evo_r, "initial synchronized ratio expression");
    evo->add_option("--t-max", evo_tmax);
    evo->add_option("--steps", evo_steps);
    evo->add_flag("--allow-any-psi0", evo_any, "skip the synchronized-initial-state requirement");
    evo->add_option("--out", evo_out, "output CSV")->required();

    auto* dis = app.add_subcommand("discrete", "exact Z[i] design pipeline");
    std::string dis_z, dis_w, dis_target, dis_out, dis_in;
    double dis_eps = 1e-3;
    std::size_t dis_q = 0;
    dis->add_option("--z", dis_z, "numerator z (Gaussian integer, e.g. '1+1i')");
    dis->add_option("--w", dis_w, "denominator w (Gaussian integer)");
    dis->add_option("--target", dis_target, "complex target ratio to approximate");
    dis->add_option("--epsilon", dis_eps, "projective tolerance for --target");
    dis->add_option("--q", dis_q, "even block size (>= minimal q)");
    dis->add_option("--out", dis_out, "write the exact design JSON");
    dis->add_option("--in", dis_in, "load and re-verify an exact design JSON");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    try {
        if (syn->parsed())
            return cmd_synthesize(parse_class(syn_class), syn_target, syn_lambda, syn_delta,
                                  syn_tau_frac * syn_delta, syn_zero_gap, syn_zg_coupling,
                                  syn_discrete, syn_eps, syn_exact, syn_q, syn_n, syn_m, syn_out,
                                  syn_tol, syn_shift);
        if (ver->parsed()) {
            const std::optional<double> l =
                ver->count("--lambda") ? std::optional<double>(ver_lambda_val) : std::nullopt;
            const std::optional<double> dl =
                ver->count("--delta") ? std::optional<double>(ver_delta_val) : std::nullopt;
            return cmd_verify(ver_file, ver_sidecar, ver_psi, ver_r, l, dl, ver_tol, ver_csv,
                              ver_cap, ver_collision);
        }
        if (scn->parsed())
            return cmd_scan(parse_class(scn_class), scn_re_min, scn_re_max, scn_im_min, scn_im_max,
                            scn_steps, scn_samples, scn_ann_min, scn_ann_max, scn_seed, scn_lambda,
                            scn_delta, scn_tol, scn_out);
        if (evo->parsed())
            return cmd_evolve(evo_file, evo_sidecar, evo_psi, evo_r, evo_tmax, evo_steps, evo_any,
                              evo_out);
        if (dis->parsed())
            return cmd_discrete(dis_z, dis_w, dis_target, dis_eps, dis_q, dis_out, dis_in);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        switch (e.code()) {
            case ErrorCode::ObstructionViolated: return kExitObstructed;
            case ErrorCode::DegenerateRatio:
            case ErrorCode::NonzeroGapImpossible: return kExitDegenerate;
            case ErrorCode::ParseError: return kExitUsage;
            case ErrorCode::IoError: return kExitIo;
            case ErrorCode::InitialStateNotSynchronized: return kExitNotSynchronized;
            default: return kExitChecksFailed;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitChecksFailed;
    }
    return kExitUsage;
}
