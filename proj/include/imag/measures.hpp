#pragma once

#include <cstdint>

#include "imag/states.hpp"

namespace imag {

enum class MeasureKind { Geometric, GeometricLike };

/// Geometric: (1-A)/2. GeometricLike: 1 - sqrt((1+A)/2).
double measure_pure(const PureState& psi, MeasureKind kind);
double pure_measure_from_witness(double witness, MeasureKind kind);

/// Closed forms in r = root_fidelity(rho, rho^T):
/// Geometric (1-r)/2, GeometricLike 1 - sqrt((1+r)/2).
double measure_mixed(const DensityMatrix& rho, MeasureKind kind);

/// Takagi-based construction: members are columns of sqrt(rho) * conj(U)
/// where takagi(sqrt(rho)^T sqrt(rho)) = U D U^T. Reconstructs rho and
/// attains sum_j p_j |<psi_j*|psi_j>| = root_fidelity(rho, rho^T).
Ensemble optimal_decomposition(const DensityMatrix& rho);

/// Decomposition whose members all satisfy M_gl(psi_i) = M_gl(rho); attains
/// the geometric-like convex roof.
Ensemble equalized_decomposition(const DensityMatrix& rho);

struct RoofResult {
    double value;
    Ensemble ensemble;
    int iterations;
};

/// Brute-force convex-roof search over ensemble isometries, independent of the
/// closed-form path. Deterministic for a fixed seed.
RoofResult convex_roof_oracle(const DensityMatrix& rho, MeasureKind kind, int restarts = 20,
                              int ensemble_size = 4, std::uint64_t seed = 0);

}  // namespace imag
