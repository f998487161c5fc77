#include "imag/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "imag/channels.hpp"
#include "imag/conversion.hpp"
#include "imag/errors.hpp"
#include "imag/measures.hpp"
#include "imag/numerics.hpp"
#include "imag/sampling.hpp"

namespace imag {

namespace {

struct Tracker {
    double worst = 0.0;
    void note(double violation) { worst = std::max(worst, violation); }
};

CheckResult finish(std::string label, const Tracker& t, double tol) {
    return {std::move(label), t.worst, tol, t.worst <= tol};
}

bool all_passed(const std::vector<CheckResult>& checks) {
    return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

std::uint64_t derive(std::uint64_t seed, std::uint64_t i) {
    return seed ^ (0x9e3779b97f4a7c15ULL * (i + 1));
}

DensityMatrix random_real_density(Sampler& s, int dim) {
    ComplexMatrix o = s.random_real_orthogonal(dim);
    std::vector<double> p(dim);
    double tot = 0.0;
    for (auto& x : p) tot += (x = s.uniform(0.01, 1.0));
    ComplexMatrix rho(dim);
    for (int j = 0; j < dim; ++j) rho += cplx(p[j] / tot) * outer(o.column(j), o.column(j));
    return DensityMatrix::validate(rho);
}

double branch_witness(const DensityMatrix& rho) {
    return root_fidelity(rho.matrix(), rho.matrix().transpose());
}

}  // namespace

SuiteReport run_roof_suite(int samples, std::uint64_t seed) {
    Sampler s(seed);
    const int n_qutrit = std::max(1, samples / 4);
    const int n_qubit = std::max(1, samples - n_qutrit);
    Tracker oracle_gap, opt_recon, opt_roof, eq_recon, eq_roof;
    auto probe = [&](const DensityMatrix& rho, int ensemble_size) {
        const double closed = measure_mixed(rho, MeasureKind::GeometricLike);
        RoofResult roof =
            convex_roof_oracle(rho, MeasureKind::GeometricLike, 20, ensemble_size, s.uniform() * 1e9);
        oracle_gap.note(std::abs(roof.value - closed));
        const double r = branch_witness(rho);
        Ensemble opt = optimal_decomposition(rho);
        opt_recon.note(opt.reconstruction_error(rho));
        double avg_witness = 0.0;
        for (std::size_t j = 0; j < opt.members.size(); ++j)
            avg_witness += opt.weights[j] * opt.members[j].witness();
        opt_roof.note(std::abs(avg_witness - r));
        Ensemble eq = equalized_decomposition(rho);
        eq_recon.note(eq.reconstruction_error(rho));
        double avg_measure = 0.0;
        for (std::size_t j = 0; j < eq.members.size(); ++j)
            avg_measure +=
                eq.weights[j] * measure_pure(eq.members[j], MeasureKind::GeometricLike);
        eq_roof.note(std::abs(avg_measure - closed));
    };
    for (int i = 0; i < n_qubit; ++i) probe(s.random_density(2), 4);
    for (int i = 0; i < n_qutrit; ++i) probe(s.random_density(3), 6);

    std::vector<CheckResult> checks;
    checks.push_back(finish("oracle vs closed form (geometric-like)", oracle_gap, 1e-5));
    checks.push_back(finish("optimal decomposition reconstruction", opt_recon, 1e-9));
    checks.push_back(finish("optimal decomposition witness average = root fidelity", opt_roof, 1e-8));
    checks.push_back(finish("equalized decomposition reconstruction", eq_recon, 1e-9));
    checks.push_back(finish("equalized decomposition roof value", eq_roof, 1e-8));
    return {"roof", seed, samples, checks, all_passed(checks)};
}

SuiteReport run_monotonicity_suite(int samples, std::uint64_t seed) {
    Sampler s(seed);
    Tracker m1_real, m1_zero, m2_g, m2_gl, m3_g, m3_gl, m4_g, m4_gl;
    for (int i = 0; i < samples; ++i) {
        // (M1) real states measure zero; (near-)zero measure implies (near-)real
        DensityMatrix real_rho = random_real_density(s, 2);
        m1_real.note(measure_mixed(real_rho, MeasureKind::GeometricLike));
        m1_real.note(measure_mixed(real_rho, MeasureKind::Geometric));
        DensityMatrix rho =
            (i % 2 == 0) ? s.random_density(2) : DensityMatrix::from_pure(s.random_pure(2));
        if (measure_mixed(rho, MeasureKind::GeometricLike) <= 1e-10)
            m1_zero.note(rho.matrix().symmetry_error());

        // (M2)/(M3) against a random real trace-preserving channel
        KrausChannel channel = random_real_channel(2, 1 + static_cast<int>(i % 3), derive(seed, i));
        const double mg = measure_mixed(rho, MeasureKind::Geometric);
        const double mgl = measure_mixed(rho, MeasureKind::GeometricLike);
        DensityMatrix out = apply(channel, rho);
        m2_g.note(measure_mixed(out, MeasureKind::Geometric) - mg);
        m2_gl.note(measure_mixed(out, MeasureKind::GeometricLike) - mgl);
        double avg_g = 0.0, avg_gl = 0.0;
        for (const auto& branch : apply_stochastic(channel, rho)) {
            avg_g += branch.probability * measure_mixed(branch.state, MeasureKind::Geometric);
            avg_gl += branch.probability * measure_mixed(branch.state, MeasureKind::GeometricLike);
        }
        m3_g.note(avg_g - mg);
        m3_gl.note(avg_gl - mgl);

        // (M4) convexity over a random 3-member ensemble
        double w[3], tot = 0.0;
        DensityMatrix parts[3] = {s.random_density(2), s.random_density(2), s.random_density(2)};
        for (double& x : w) tot += (x = s.uniform(0.01, 1.0));
        ComplexMatrix mix(2);
        double rhs_g = 0.0, rhs_gl = 0.0;
        for (int j = 0; j < 3; ++j) {
            mix += cplx(w[j] / tot) * parts[j].matrix();
            rhs_g += w[j] / tot * measure_mixed(parts[j], MeasureKind::Geometric);
            rhs_gl += w[j] / tot * measure_mixed(parts[j], MeasureKind::GeometricLike);
        }
        DensityMatrix mixed = DensityMatrix::validate(mix);
        m4_g.note(measure_mixed(mixed, MeasureKind::Geometric) - rhs_g);
        m4_gl.note(measure_mixed(mixed, MeasureKind::GeometricLike) - rhs_gl);
    }
    std::vector<CheckResult> checks;
    checks.push_back(finish("M1 real states have zero measure", m1_real, 1e-8));
    checks.push_back(finish("M1 zero measure implies real", m1_zero, 1e-6));
    checks.push_back(finish("M2 monotonicity (geometric)", m2_g, 1e-9));
    checks.push_back(finish("M2 monotonicity (geometric-like)", m2_gl, 1e-9));
    checks.push_back(finish("M3 strong monotonicity (geometric)", m3_g, 1e-9));
    checks.push_back(finish("M3 strong monotonicity (geometric-like)", m3_gl, 1e-9));
    checks.push_back(finish("M4 convexity (geometric)", m4_g, 1e-9));
    checks.push_back(finish("M4 convexity (geometric-like)", m4_gl, 1e-9));
    return {"monotonicity", seed, samples, checks, all_passed(checks)};
}

SuiteReport run_decay_suite(int grid_n) {
    if (grid_n < 3) throw BadParameter("grid must have at least 3 points");
    const NoiseFamily families[] = {NoiseFamily::BitFlip, NoiseFamily::PhaseDamping,
                                    NoiseFamily::AmplitudeDamping};
    const MeasureKind kinds[] = {MeasureKind::Geometric, MeasureKind::GeometricLike};
    Tracker cross, dominance, strict, concave_param, convex_a;
    for (NoiseFamily fam : families) {
        for (MeasureKind kind : kinds) {
            std::vector<double> grid(static_cast<std::size_t>(grid_n) * grid_n);
            for (int i = 0; i < grid_n; ++i) {
                const double a = static_cast<double>(i) / (grid_n - 1);
                for (int j = 0; j < grid_n; ++j) {
                    const double q = static_cast<double>(j) / (grid_n - 1);
                    const double closed = decay_closed_form({fam, q}, a, kind);
                    cross.note(std::abs(closed - decay_simulated({fam, q}, a, kind)));
                    grid[static_cast<std::size_t>(i) * grid_n + j] = closed;
                }
            }
            auto at = [&](int i, int j) { return grid[static_cast<std::size_t>(i) * grid_n + j]; };
            for (int i = 0; i < grid_n; ++i)
                for (int j = 1; j + 1 < grid_n; ++j)
                    concave_param.note(at(i, j - 1) + at(i, j + 1) - 2.0 * at(i, j));
            for (int j = 0; j < grid_n; ++j)
                for (int i = 1; i + 1 < grid_n; ++i)
                    convex_a.note(2.0 * at(i, j) - at(i - 1, j) - at(i + 1, j));
        }
        for (int i = 0; i < grid_n; ++i) {
            const double a = static_cast<double>(i) / (grid_n - 1);
            for (int j = 0; j < grid_n; ++j) {
                const double q = static_cast<double>(j) / (grid_n - 1);
                dominance.note(decay_closed_form({fam, q}, a, MeasureKind::GeometricLike) -
                               decay_closed_form({fam, q}, a, MeasureKind::Geometric));
            }
        }
        const double gap = decay_closed_form({fam, 0.5}, 0.5, MeasureKind::Geometric) -
                           decay_closed_form({fam, 0.5}, 0.5, MeasureKind::GeometricLike);
        strict.note(gap > 1e-6 ? 0.0 : 1.0);
    }
    std::vector<CheckResult> checks;
    checks.push_back(finish("closed form vs simulation", cross, 1e-9));
    checks.push_back(finish("geometric decay dominates geometric-like", dominance, 1e-12));
    checks.push_back(finish("strict dominance at (0.5, 0.5)", strict, 0.0));
    checks.push_back(finish("concavity along channel parameter", concave_param, 1e-9));
    checks.push_back(finish("convexity along witness", convex_a, 1e-9));
    return {"decay", 0, grid_n, checks, all_passed(checks)};
}

SuiteReport run_conversion_suite(int samples, std::uint64_t seed) {
    Sampler s(seed);
    Tracker consistency, filter_witness, filter_prob, lemma_fid, lemma_val, ball_min, ball_max,
        thm4_sound, thm4_mono, thm4_f1;

    // Thm. 3 = Prop. 1 = Eq. (2) bound on rank-1 targets
    for (int i = 0; i < samples; ++i) {
        PureState psi = s.random_pure(2), phi = s.random_pure(2);
        ConversionResult p2p = pure_to_pure_probability(psi, phi);
        ConversionResult p2m = pure_to_mixed_probability(psi, DensityMatrix::from_pure(phi));
        ConversionResult bound = conversion_bound(DensityMatrix::from_pure(psi),
                                                  DensityMatrix::from_pure(phi),
                                                  MeasureKind::GeometricLike);
        consistency.note(std::abs(p2p.probability - p2m.probability));
        consistency.note(std::abs(p2p.probability - bound.probability));
    }

    // filter protocol sweep: branch-0 witness and probability vs Prop. 1
    const double sqrt2 = std::sqrt(2.0);
    for (int i = 0; i < 20; ++i) {
        for (int j = 0; j < 20; ++j) {
            const double a_t = (i + 0.5) / 21.0;
            const double a_s = a_t + (1.0 - a_t) * (j + 1.0) / 21.0;
            FilterProtocol fp = filter_protocol(a_s, a_t);
            auto branches =
                apply_stochastic(fp.channel, DensityMatrix::from_pure(canonical_state(a_s)));
            filter_witness.note(std::abs(branch_witness(branches.front().state) - a_t));
            const double prop1 = (sqrt2 - std::sqrt(1.0 + a_s)) / (sqrt2 - std::sqrt(1.0 + a_t));
            filter_prob.note(std::abs(branches.front().probability - prop1));
        }
    }

    // Lemma 2: construction attainability and sampled extremality
    const double fs[] = {0.9, 0.99, 0.999};
    const int n_centers = std::max(1, std::min(samples, 50));
    for (int i = 0; i < n_centers; ++i) {
        DensityMatrix rho = s.random_density(2);
        for (double f : fs) {
            MixedBallExtremum lo = min_mgl_fidelity_ball({rho, f});
            const double rf = root_fidelity(rho.matrix(), lo.state.matrix());
            lemma_fid.note(f - rf * rf);
            lemma_val.note(std::abs(measure_mixed(lo.state, MeasureKind::GeometricLike) - lo.value));
        }
    }
    const int n_ball = std::max(10, samples * 10);
    {
        DensityMatrix rho = s.random_density(2);
        PureState psi = s.random_pure(2);
        const double f = 0.95;
        MixedBallExtremum lo = min_mgl_fidelity_ball({rho, f});
        PureBallExtremum hi = max_mgl_fidelity_ball(psi, f);
        DensityMatrix pure_center = DensityMatrix::from_pure(psi);
        for (int i = 0; i < n_ball; ++i) {
            DensityMatrix member = s.sample_in_fidelity_ball(rho, f);
            ball_min.note(lo.value - measure_mixed(member, MeasureKind::GeometricLike));
            DensityMatrix pure_member = s.sample_in_fidelity_ball(pure_center, f);
            ball_max.note(measure_mixed(pure_member, MeasureKind::GeometricLike) - hi.value);
        }
    }

    // Thm. 4: random-search soundness, monotonicity in f, f = 1 reduction
    const int n_triples = std::max(2, samples / 25);
    for (int i = 0; i < n_triples; ++i) {
        PureState psi = s.random_pure(2);
        DensityMatrix rho = s.random_density(2);
        const double f = s.uniform(0.85, 0.999);
        const double pf = stochastic_approx_probability(psi, rho, f);
        DensityMatrix src = DensityMatrix::from_pure(psi);
        for (int c = 0; c < 1000; ++c) {
            KrausChannel channel = s.random_subnormalized_real(2, 1 + c % 2);
            ComplexMatrix acc(2);
            for (const auto& k : channel.kraus_ops())
                acc += k * src.matrix() * k.adjoint();
            const double p = acc.trace().real();
            if (p < 1e-9) continue;
            acc *= cplx(1.0 / p);
            const double rf = root_fidelity(rho.matrix(), DensityMatrix::validate(acc).matrix());
            if (rf * rf >= f) thm4_sound.note(p - pf);
        }
        double prev = -1.0;
        for (double fq = 0.80; fq <= 1.0 + 1e-12; fq += 0.02) {
            const double v = stochastic_approx_probability(psi, rho, std::min(fq, 1.0));
            if (prev >= 0.0) thm4_mono.note(v - prev);  // nonincreasing in f
            prev = v;
        }
        thm4_f1.note(std::abs(stochastic_approx_probability(psi, rho, 1.0) -
                              pure_to_mixed_probability(psi, rho).probability));
    }

    std::vector<CheckResult> checks;
    checks.push_back(finish("Thm 3 = Prop 1 = bound on rank-1 targets", consistency, 1e-10));
    checks.push_back(finish("filter branch-0 witness hits target", filter_witness, 1e-9));
    checks.push_back(finish("filter branch-0 probability matches Prop 1", filter_prob, 1e-8));
    checks.push_back(finish("ball minimum: construction stays in ball", lemma_fid, 1e-9));
    checks.push_back(finish("ball minimum: construction attains value", lemma_val, 1e-7));
    checks.push_back(finish("ball minimum under sampled members", ball_min, 1e-6));
    checks.push_back(finish("ball maximum over sampled members (pure center)", ball_max, 1e-6));
    checks.push_back(finish("Thm 4 soundness vs random channels", thm4_sound, 1e-6));
    checks.push_back(finish("P_f nonincreasing in f", thm4_mono, 1e-12));
    checks.push_back(finish("P_f at f = 1 equals Thm 3", thm4_f1, 1e-10));
    return {"conversion", seed, samples, checks, all_passed(checks)};
}

std::vector<SuiteReport> run_suites(const std::string& which, int samples, std::uint64_t seed) {
    std::vector<SuiteReport> out;
    if (which == "roof" || which == "all") out.push_back(run_roof_suite(samples, seed));
    if (which == "monotonicity" || which == "all")
        out.push_back(run_monotonicity_suite(samples, seed));
    if (which == "decay" || which == "all") out.push_back(run_decay_suite());
    if (which == "conversion" || which == "all")
        out.push_back(run_conversion_suite(samples, seed));
    if (out.empty()) throw BadParameter("unknown suite: " + which);
    return out;
}

std::string format_report(const SuiteReport& report) {
    std::ostringstream os;
    os << "suite " << report.suite << " seed " << report.seed << " samples " << report.samples
       << "\n";
    char buf[64];
    for (const auto& c : report.checks) {
        std::snprintf(buf, sizeof(buf), "%.3e", c.max_violation);
        os << "  " << c.label << ": max violation " << buf;
        std::snprintf(buf, sizeof(buf), "%.1e", c.tolerance);
        os << " tol " << buf << " " << (c.passed ? "PASS" : "FAIL") << "\n";
    }
    os << "suite " << report.suite << ": " << (report.passed ? "PASS" : "FAIL") << "\n";
    return os.str();
}

}  // namespace imag
