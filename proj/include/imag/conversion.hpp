#pragma once

#include <optional>

#include "imag/channels.hpp"
#include "imag/measures.hpp"
#include "imag/states.hpp"

namespace imag {

enum class ConversionBranch { Deterministic, Filtered };

struct ConversionResult {
    double probability;        // in [0,1]
    ConversionBranch branch;
    std::optional<KrausChannel> protocol;  // real sub-normalized success branch
    bool target_free = false;  // target is real; probability 1 by convention
};

struct FidelityBall {
    DensityMatrix center;
    double f;  // F(center, rho') >= f
};

/// min{M(rho)/M(sigma), 1}; target_free when M(sigma) <= 1e-12.
ConversionResult conversion_bound(const DensityMatrix& rho, const DensityMatrix& sigma,
                                  MeasureKind kind);

/// min{(sqrt2 - sqrt(1+A_psi))/(sqrt2 - sqrt(1+A_phi)), 1}; Deterministic when
/// A_psi <= A_phi, otherwise Filtered with the achieving protocol attached.
ConversionResult pure_to_pure_probability(const PureState& psi, const PureState& phi);

struct FilterProtocol {
    double probability;   // branch-0 weight on the canonical source state
    KrausChannel channel; // {K0 = diag(a,1), K1 = sqrt(I - K0^2)}
};

/// Filter mapping the canonical state of witness A_source onto witness
/// A_target (requires A_source >= A_target): a^2 = ((1-A_s)(1+A_t)) /
/// ((1+A_s)(1-A_t)). The probability is the simulated branch-0 weight, not a
/// formula.
FilterProtocol filter_protocol(double a_source, double a_target);

/// min{M_gl(psi)/M_gl(rho), 1}; coincides with pure_to_pure on rank-1 targets.
ConversionResult pure_to_mixed_probability(const PureState& psi, const DensityMatrix& rho);

struct MixedBallExtremum {
    double value;
    DensityMatrix state;
};
struct PureBallExtremum {
    double value;
    PureState state;
};

/// Minimal M_gl over {rho': F(center, rho') >= f}: 1 - cos(max{alpha - k, 0})
/// with alpha = arccos(1 - M_gl(center)), k = arccos(sqrt f). The returned
/// state attains it inside the ball.
MixedBallExtremum min_mgl_fidelity_ball(const FidelityBall& ball);

/// Maximal M_gl over the ball around a pure center: 1 - cos(min{alpha + k, pi/4}).
PureBallExtremum max_mgl_fidelity_ball(const PureState& psi, double f);

/// Maximal success probability of reaching within fidelity f of rho from psi:
/// 1 if alpha_psi - alpha_rho + k >= 0, else M_gl(psi)/(1 - cos(alpha_rho - k)).
double stochastic_approx_probability(const PureState& psi, const DensityMatrix& rho, double f);

}  // namespace imag
