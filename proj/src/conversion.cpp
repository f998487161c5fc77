#include "imag/conversion.hpp"

#include <algorithm>
#include <cmath>

#include "imag/errors.hpp"
#include "imag/numerics.hpp"

namespace imag {

namespace {

constexpr double kFreeTol = 1e-12;

double clamp01(double x) { return std::clamp(x, 0.0, 1.0); }

void check_fidelity(double f) {
    if (!(f >= 0.0 && f <= 1.0)) throw BadFidelity("fidelity outside [0,1]");
}

// alpha = arccos(1 - M_gl), in [0, pi/4]
double measure_angle(double m_gl) { return std::acos(clamp01(1.0 - m_gl)); }

}  // namespace

ConversionResult conversion_bound(const DensityMatrix& rho, const DensityMatrix& sigma,
                                  MeasureKind kind) {
    const double m_target = measure_mixed(sigma, kind);
    if (m_target <= kFreeTol)
        return {1.0, ConversionBranch::Deterministic, std::nullopt, true};
    const double p = std::min(measure_mixed(rho, kind) / m_target, 1.0);
    return {p, p >= 1.0 ? ConversionBranch::Deterministic : ConversionBranch::Filtered,
            std::nullopt, false};
}

ConversionResult pure_to_pure_probability(const PureState& psi, const PureState& phi) {
    const double a_s = psi.witness(), a_t = phi.witness();
    if (a_t >= 1.0 - kFreeTol)
        return {1.0, ConversionBranch::Deterministic, std::nullopt, true};
    if (a_s <= a_t) return {1.0, ConversionBranch::Deterministic, std::nullopt, false};
    const double sqrt2 = std::sqrt(2.0);
    const double p = clamp01((sqrt2 - std::sqrt(1.0 + a_s)) / (sqrt2 - std::sqrt(1.0 + a_t)));
    FilterProtocol fp = filter_protocol(a_s, a_t);
    return {p, ConversionBranch::Filtered, KrausChannel({fp.channel.kraus_ops().front()}), false};
}

FilterProtocol filter_protocol(double a_source, double a_target) {
    if (!(a_source >= 0.0 && a_source <= 1.0 && a_target >= 0.0 && a_target <= 1.0))
        throw BadParameter("witness outside [0,1]");
    if (a_source < a_target)
        throw BadRegime("filter needs a_source >= a_target; use the deterministic map");
    double a;
    if (1.0 - a_target <= kFreeTol) {
        a = 1.0;  // a_source = a_target = 1: identity filter
    } else {
        a = std::sqrt(clamp01(((1.0 - a_source) * (1.0 + a_target)) /
                              ((1.0 + a_source) * (1.0 - a_target))));
    }
    ComplexMatrix k0{{a, 0.0}, {0.0, 1.0}};
    const double b = std::sqrt(clamp01(1.0 - a * a));
    ComplexMatrix k1{{b, 0.0}, {0.0, 0.0}};
    KrausChannel channel({k0, k1});
    // branch-0 weight on the canonical source: a^2 (1+A)/2 + (1-A)/2
    const double p = a * a * (1.0 + a_source) / 2.0 + (1.0 - a_source) / 2.0;
    return {clamp01(p), std::move(channel)};
}

ConversionResult pure_to_mixed_probability(const PureState& psi, const DensityMatrix& rho) {
    const double m_target = measure_mixed(rho, MeasureKind::GeometricLike);
    if (m_target <= kFreeTol)
        return {1.0, ConversionBranch::Deterministic, std::nullopt, true};
    const double p = std::min(measure_pure(psi, MeasureKind::GeometricLike) / m_target, 1.0);
    return {p, p >= 1.0 ? ConversionBranch::Deterministic : ConversionBranch::Filtered,
            std::nullopt, false};
}

MixedBallExtremum min_mgl_fidelity_ball(const FidelityBall& ball) {
    check_fidelity(ball.f);
    const double m = measure_mixed(ball.center, MeasureKind::GeometricLike);
    const double alpha = measure_angle(m);
    const double k = std::acos(std::sqrt(ball.f));
    const double beta = std::max(alpha - k, 0.0);
    const double value = 1.0 - std::cos(beta);

    // rho_min: rotate each equalized member down to angle beta in its own
    // (a_i, a_i_perp) plane, reweight by the overlap with the original member.
    Ensemble ens = equalized_decomposition(ball.center);
    const int d = ball.center.dim();
    ComplexMatrix acc(d);
    double total = 0.0;
    std::vector<double> q(ens.members.size());
    std::vector<PureState> rotated;
    rotated.reserve(ens.members.size());
    for (std::size_t i = 0; i < ens.members.size(); ++i) {
        RealSplit split = real_split(ens.members[i]);
        CVec phi(d);
        for (int j = 0; j < d; ++j)
            phi[j] = cplx(std::cos(beta) * split.a[j], std::sin(beta) * split.a_perp[j]);
        rotated.emplace_back(std::move(phi));
        const cplx overlap = inner(ens.members[i].amplitudes(), rotated.back().amplitudes());
        q[i] = ens.weights[i] * std::norm(overlap);
        total += q[i];
    }
    for (std::size_t i = 0; i < ens.members.size(); ++i)
        acc += cplx(q[i] / total) * outer(rotated[i].amplitudes(), rotated[i].amplitudes());
    return {value, DensityMatrix::validate(acc)};
}

PureBallExtremum max_mgl_fidelity_ball(const PureState& psi, double f) {
    check_fidelity(f);
    const double alpha = measure_angle(measure_pure(psi, MeasureKind::GeometricLike));
    const double k = std::acos(std::sqrt(f));
    const double theta = std::min(alpha + k, M_PI / 4.0);
    RealSplit split = real_split(psi);
    CVec amp(psi.dim());
    for (int j = 0; j < psi.dim(); ++j)
        amp[j] = cplx(std::cos(theta) * split.a[j], std::sin(theta) * split.a_perp[j]);
    return {1.0 - std::cos(theta), PureState(std::move(amp))};
}

double stochastic_approx_probability(const PureState& psi, const DensityMatrix& rho, double f) {
    check_fidelity(f);
    const double m_psi = measure_pure(psi, MeasureKind::GeometricLike);
    const double m_rho = measure_mixed(rho, MeasureKind::GeometricLike);
    const double alpha_psi = measure_angle(m_psi);
    const double alpha_rho = measure_angle(m_rho);
    const double k = std::acos(std::sqrt(f));
    if (alpha_psi - alpha_rho + k >= 0.0) return 1.0;
    const double denom_angle = alpha_rho - k;
    if (denom_angle <= 0.0) return 1.0;  // target effectively free within the ball
    return std::min(m_psi / (1.0 - std::cos(denom_angle)), 1.0);
}

}  // namespace imag
