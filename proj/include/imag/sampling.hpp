#pragma once

#include <cstdint>
#include <random>

#include "imag/channels.hpp"
#include "imag/matrix.hpp"
#include "imag/states.hpp"

namespace imag {

/// Deterministic random-state factory; every draw is reproducible per seed.
class Sampler {
public:
    explicit Sampler(std::uint64_t seed) : rng_(seed) {}

    double uniform();                  // [0,1)
    double uniform(double lo, double hi);
    double gauss();                    // standard normal (Box-Muller)
    cplx cgauss();                     // complex standard normal

    CVec random_unit_vector(int dim);
    PureState random_pure(int dim);
    /// Ginibre construction G G^dag / tr; rank = dim when rank <= 0.
    DensityMatrix random_density(int dim, int rank = 0);
    ComplexMatrix random_real_orthogonal(int dim);

    /// Random real channel with sum K^dag K strictly below identity: a random
    /// real isometry channel composed with a random filter diag(c_1..c_d).
    KrausChannel random_subnormalized_real(int dim, int n_kraus);

    /// Rejection sampler over {rho': F(center, rho') >= f} using purification
    /// perturbations (Bures-ball proposals) with adaptive radius.
    DensityMatrix sample_in_fidelity_ball(const DensityMatrix& center, double f);

private:
    std::mt19937_64 rng_;
    std::uniform_real_distribution<double> unif_{0.0, 1.0};
    double ball_radius_ = 0.3;  // adaptive Bures-ball proposal scale
};

}  // namespace imag
