#include <cmath>
#include <doctest.h>

#include "imag/channels.hpp"
#include "imag/errors.hpp"
#include "imag/sampling.hpp"

using namespace imag;

namespace {
const cplx I_(0.0, 1.0);
}

TEST_CASE("noise channels are trace preserving and real") {
    for (NoiseFamily fam :
         {NoiseFamily::BitFlip, NoiseFamily::PhaseDamping, NoiseFamily::AmplitudeDamping}) {
        for (double q : {0.0, 0.3, 1.0}) {
            KrausChannel ch = make_noise_channel({fam, q});
            CHECK(ch.completeness() == Completeness::TracePreserving);
            CHECK(is_real_operation(ch));
        }
    }
    CHECK_THROWS_AS(make_noise_channel({NoiseFamily::BitFlip, 1.5}), BadParameter);
}

TEST_CASE("bit flip at m = 1 is the identity channel") {
    KrausChannel ch = make_noise_channel({NoiseFamily::BitFlip, 1.0});
    Sampler s(41);
    DensityMatrix rho = s.random_density(2);
    CHECK(max_abs_diff(apply(ch, rho).matrix(), rho.matrix()) < 1e-12);
}

TEST_CASE("phase damping at n = 1 dephases completely") {
    KrausChannel ch = make_noise_channel({NoiseFamily::PhaseDamping, 1.0});
    PureState plus_i({cplx(1.0 / std::sqrt(2.0), 0.0), cplx(0.0, 1.0 / std::sqrt(2.0))});
    DensityMatrix out = apply(ch, DensityMatrix::from_pure(plus_i));
    CHECK(out.matrix()(0, 0).real() == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(out.matrix()(1, 1).real() == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(std::abs(out.matrix()(0, 1)) < 1e-12);

    auto branches = apply_stochastic(ch, DensityMatrix::from_pure(plus_i));
    REQUIRE(branches.size() == 2);
    CHECK(branches[0].probability == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(branches[1].probability == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("bit flip output entry matches the canonical-state form") {
    for (double a : {0.0, 0.4, 1.0}) {
        for (double m : {0.0, 0.3, 0.7}) {
            KrausChannel ch = make_noise_channel({NoiseFamily::BitFlip, m});
            DensityMatrix out = apply(ch, DensityMatrix::from_pure(canonical_state(a)));
            CHECK(out.matrix()(0, 0).real() ==
                  doctest::Approx(a * (m - 0.5) + 0.5).epsilon(1e-12));
        }
    }
}

TEST_CASE("is_real_operation flags complex Kraus operators") {
    KrausChannel complex_ch({ComplexMatrix{{1.0, 0.0}, {0.0, I_}}});
    CHECK_FALSE(is_real_operation(complex_ch));
}

TEST_CASE("KrausChannel classification and validation") {
    ComplexMatrix half{{0.5, 0.0}, {0.0, 0.5}};
    CHECK(KrausChannel({half}).completeness() == Completeness::SubNormalized);
    ComplexMatrix big{{2.0, 0.0}, {0.0, 2.0}};
    CHECK_THROWS_AS(KrausChannel({big}), NotTracePreserving);
    CHECK_THROWS_AS(apply(KrausChannel({half}), DensityMatrix::from_pure(canonical_state(0.5))),
                    NotTracePreserving);
}

TEST_CASE("filter branch weight on the canonical state") {
    const double a = 0.6, wit = 0.3;
    ComplexMatrix k0{{a, 0.0}, {0.0, 1.0}};
    ComplexMatrix k1{{std::sqrt(1.0 - a * a), 0.0}, {0.0, 0.0}};
    auto branches =
        apply_stochastic(KrausChannel({k0, k1}), DensityMatrix::from_pure(canonical_state(wit)));
    CHECK(branches.front().probability ==
          doctest::Approx(a * a * (1.0 + wit) / 2.0 + (1.0 - wit) / 2.0).epsilon(1e-12));
}

TEST_CASE("decay corner values") {
    for (MeasureKind kind : {MeasureKind::Geometric, MeasureKind::GeometricLike}) {
        for (NoiseFamily fam :
             {NoiseFamily::BitFlip, NoiseFamily::PhaseDamping, NoiseFamily::AmplitudeDamping}) {
            const double q = (fam == NoiseFamily::BitFlip) ? 0.7 : 0.3;
            CHECK(decay_closed_form({fam, q}, 1.0, kind) == doctest::Approx(0.0).epsilon(1e-9));
        }
    }
    CHECK(decay_closed_form({NoiseFamily::PhaseDamping, 1.0}, 0.0, MeasureKind::GeometricLike) ==
          doctest::Approx(1.0 - 1.0 / std::sqrt(2.0)).epsilon(1e-12));
    CHECK(decay_closed_form({NoiseFamily::PhaseDamping, 1.0}, 0.0, MeasureKind::Geometric) ==
          doctest::Approx(0.5).epsilon(1e-12));
    // identity-parameter channels
    CHECK(decay_closed_form({NoiseFamily::BitFlip, 1.0}, 0.5, MeasureKind::Geometric) ==
          doctest::Approx(0.0).epsilon(1e-12));
    CHECK(decay_closed_form({NoiseFamily::PhaseDamping, 0.0}, 0.5, MeasureKind::GeometricLike) ==
          doctest::Approx(0.0).epsilon(1e-12));
    CHECK(decay_closed_form({NoiseFamily::AmplitudeDamping, 0.0}, 0.5, MeasureKind::Geometric) ==
          doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("decay closed form agrees with simulation on a coarse grid") {
    for (NoiseFamily fam :
         {NoiseFamily::BitFlip, NoiseFamily::PhaseDamping, NoiseFamily::AmplitudeDamping}) {
        for (MeasureKind kind : {MeasureKind::Geometric, MeasureKind::GeometricLike}) {
            for (int i = 0; i <= 10; ++i)
                for (int j = 0; j <= 10; ++j) {
                    const double a = i / 10.0, q = j / 10.0;
                    CHECK(decay_closed_form({fam, q}, a, kind) ==
                          doctest::Approx(decay_simulated({fam, q}, a, kind)).epsilon(1e-9));
                }
        }
    }
}

TEST_CASE("random_real_channel is real, complete and deterministic") {
    for (int nk : {1, 2, 3}) {
        KrausChannel a = random_real_channel(2, nk, 7);
        KrausChannel b = random_real_channel(2, nk, 7);
        CHECK(a.completeness() == Completeness::TracePreserving);
        CHECK(is_real_operation(a));
        for (int l = 0; l < nk; ++l)
            CHECK(max_abs_diff(a.kraus_ops()[l], b.kraus_ops()[l]) == 0.0);
    }
    CHECK_THROWS_AS(random_real_channel(2, 0, 1), BadParameter);
}
