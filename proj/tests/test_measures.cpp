#include <cmath>
#include <doctest.h>

#include "imag/errors.hpp"
#include "imag/measures.hpp"
#include "imag/numerics.hpp"
#include "imag/sampling.hpp"

using namespace imag;

namespace {
const cplx I_(0.0, 1.0);

DensityMatrix reference_state() {
    return DensityMatrix::validate(ComplexMatrix{{0.75, -0.25 * I_}, {0.25 * I_, 0.25}});
}
}  // namespace

TEST_CASE("pure measures at the extremes") {
    PureState maximal({cplx(1.0 / std::sqrt(2.0), 0.0), cplx(0.0, 1.0 / std::sqrt(2.0))});
    CHECK(measure_pure(maximal, MeasureKind::Geometric) == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(measure_pure(maximal, MeasureKind::GeometricLike) ==
          doctest::Approx(1.0 - 1.0 / std::sqrt(2.0)).epsilon(1e-14));
    PureState real({1.0, 0.0});
    CHECK(measure_pure(real, MeasureKind::Geometric) == doctest::Approx(0.0));
    CHECK(measure_pure(real, MeasureKind::GeometricLike) == doctest::Approx(0.0));
}

TEST_CASE("mixed measure closed form on the reference state") {
    DensityMatrix rho = reference_state();
    CHECK(measure_mixed(rho, MeasureKind::GeometricLike) ==
          doctest::Approx(0.0340741737).epsilon(1e-8));
    CHECK(measure_mixed(rho, MeasureKind::Geometric) ==
          doctest::Approx((1.0 - std::sqrt(3.0) / 2.0) / 2.0).epsilon(1e-12));
}

TEST_CASE("mixed measure coincides with pure measure on projectors") {
    Sampler s(31);
    for (int t = 0; t < 50; ++t) {
        PureState psi = s.random_pure(2 + t % 3);
        DensityMatrix rho = DensityMatrix::from_pure(psi);
        for (MeasureKind kind : {MeasureKind::Geometric, MeasureKind::GeometricLike})
            CHECK(std::abs(measure_mixed(rho, kind) - measure_pure(psi, kind)) < 1e-9);
    }
}

TEST_CASE("bridge identity between the two measures") {
    Sampler s(32);
    for (int t = 0; t < 100; ++t) {
        DensityMatrix rho = (t % 2 == 0) ? s.random_density(2 + t % 3)
                                         : DensityMatrix::from_pure(s.random_pure(2 + t % 3));
        const double mg = measure_mixed(rho, MeasureKind::Geometric);
        const double mgl = measure_mixed(rho, MeasureKind::GeometricLike);
        CHECK(mgl == doctest::Approx(1.0 - std::sqrt(1.0 - mg)).epsilon(1e-10));
    }
}

TEST_CASE("real orthogonal invariance") {
    Sampler s(33);
    for (int t = 0; t < 20; ++t) {
        DensityMatrix rho = s.random_density(3);
        ComplexMatrix o = s.random_real_orthogonal(3);
        DensityMatrix rotated = DensityMatrix::validate(o * rho.matrix() * o.transpose());
        CHECK(measure_mixed(rotated, MeasureKind::GeometricLike) ==
              doctest::Approx(measure_mixed(rho, MeasureKind::GeometricLike)).epsilon(1e-9));
    }
}

TEST_CASE("optimal_decomposition attains the witness average") {
    Sampler s(34);
    for (int t = 0; t < 30; ++t) {
        DensityMatrix rho = (t == 0) ? reference_state() : s.random_density(2 + t % 3);
        Ensemble e = optimal_decomposition(rho);
        CHECK(e.reconstruction_error(rho) < 1e-9);
        const double r = root_fidelity(rho.matrix(), rho.matrix().transpose());
        double avg = 0.0, wsum = 0.0;
        for (std::size_t j = 0; j < e.members.size(); ++j) {
            avg += e.weights[j] * e.members[j].witness();
            wsum += e.weights[j];
        }
        CHECK(wsum == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(avg == doctest::Approx(r).epsilon(1e-8));
    }
}

TEST_CASE("equalized_decomposition equalizes the members") {
    Sampler s(35);
    for (int t = 0; t < 30; ++t) {
        DensityMatrix rho = (t == 0) ? reference_state() : s.random_density(2 + t % 3);
        const double target = measure_mixed(rho, MeasureKind::GeometricLike);
        Ensemble e = equalized_decomposition(rho);
        CHECK(e.reconstruction_error(rho) < 1e-9);
        for (const auto& m : e.members)
            CHECK(measure_pure(m, MeasureKind::GeometricLike) ==
                  doctest::Approx(target).epsilon(1e-7));
    }
}

TEST_CASE("convex_roof_oracle matches the closed form on the reference state") {
    DensityMatrix rho = reference_state();
    RoofResult r = convex_roof_oracle(rho, MeasureKind::GeometricLike, 20, 4, 0);
    CHECK(r.value == doctest::Approx(measure_mixed(rho, MeasureKind::GeometricLike)).epsilon(1e-6));
    CHECK(r.ensemble.reconstruction_error(rho) < 1e-8);
}

TEST_CASE("convex_roof_oracle is deterministic per seed") {
    Sampler s(36);
    DensityMatrix rho = s.random_density(2);
    RoofResult a = convex_roof_oracle(rho, MeasureKind::GeometricLike, 5, 4, 99);
    RoofResult b = convex_roof_oracle(rho, MeasureKind::GeometricLike, 5, 4, 99);
    CHECK(a.value == b.value);
    CHECK(a.iterations == b.iterations);
}

TEST_CASE("convex_roof_oracle rejects ensembles below rank") {
    Sampler s(37);
    DensityMatrix rho = s.random_density(3);
    CHECK_THROWS_AS(convex_roof_oracle(rho, MeasureKind::GeometricLike, 1, 2, 0), BadEnsembleSize);
}
