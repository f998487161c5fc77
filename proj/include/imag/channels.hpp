#pragma once

#include <cstdint>
#include <vector>

#include "imag/matrix.hpp"
#include "imag/measures.hpp"
#include "imag/states.hpp"

namespace imag {

enum class Completeness { TracePreserving, SubNormalized };

/// Kraus map rho -> sum_l K_l rho K_l^dag. Construction validates
/// sum K^dag K = I (trace preserving) or <= I + 1e-10 (sub-normalized).
class KrausChannel {
public:
    explicit KrausChannel(std::vector<ComplexMatrix> ops);

    int dim() const { return ops_.front().dim(); }
    const std::vector<ComplexMatrix>& kraus_ops() const { return ops_; }
    Completeness completeness() const { return comp_; }

private:
    std::vector<ComplexMatrix> ops_;
    Completeness comp_;
};

enum class NoiseFamily { BitFlip, PhaseDamping, AmplitudeDamping };

struct NoiseKind {
    NoiseFamily family;
    double parameter;  // m, n, or p in [0,1]
};

KrausChannel make_noise_channel(NoiseKind kind);

DensityMatrix apply(const KrausChannel& channel, const DensityMatrix& rho);

bool is_real_operation(const KrausChannel& channel, double tol = 1e-10);

struct StochasticBranch {
    double probability;
    DensityMatrix state;
};

/// Post-selected branches (p_l, K_l rho K_l^dag / p_l); branches with
/// p_l < 1e-12 are omitted.
std::vector<StochasticBranch> apply_stochastic(const KrausChannel& channel, const DensityMatrix& rho);

/// The printed closed forms for Delta M = M(rho) - M(channel(rho)) on the
/// canonical pure state of witness A.
double decay_closed_form(NoiseKind kind, double witness, MeasureKind measure);

/// Same quantity by direct simulation: build the canonical state, apply the
/// channel, subtract the measures.
double decay_simulated(NoiseKind kind, double witness, MeasureKind measure);

/// Real trace-preserving channel from the QR factor of a Gaussian real
/// (dim*n_kraus) x dim matrix; deterministic per seed.
KrausChannel random_real_channel(int dim, int n_kraus, std::uint64_t seed);

}  // namespace imag
