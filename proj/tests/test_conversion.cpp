#include <cmath>
#include <doctest.h>

#include "imag/conversion.hpp"
#include "imag/errors.hpp"
#include "imag/numerics.hpp"
#include "imag/sampling.hpp"

using namespace imag;

namespace {
const cplx I_(0.0, 1.0);

DensityMatrix reference_state() {
    return DensityMatrix::validate(ComplexMatrix{{0.75, -0.25 * I_}, {0.25 * I_, 0.25}});
}
}  // namespace

TEST_CASE("conversion_bound trivial cases") {
    Sampler s(51);
    DensityMatrix rho = reference_state();
    PureState real({1.0, 0.0});
    ConversionResult to_free =
        conversion_bound(rho, DensityMatrix::from_pure(real), MeasureKind::GeometricLike);
    CHECK(to_free.probability == doctest::Approx(1.0));
    CHECK(to_free.target_free);
    ConversionResult from_free =
        conversion_bound(DensityMatrix::from_pure(real), rho, MeasureKind::GeometricLike);
    CHECK(from_free.probability == doctest::Approx(0.0).epsilon(1e-12));
    ConversionResult self = conversion_bound(rho, rho, MeasureKind::GeometricLike);
    CHECK(self.probability == doctest::Approx(1.0));
}

TEST_CASE("pure_to_pure_probability reference value") {
    ConversionResult r = pure_to_pure_probability(canonical_state(0.8), canonical_state(0.2));
    const double expected = (std::sqrt(2.0) - std::sqrt(1.8)) / (std::sqrt(2.0) - std::sqrt(1.2));
    CHECK(r.probability == doctest::Approx(expected).epsilon(1e-12));
    CHECK(r.probability == doctest::Approx(0.2276661209).epsilon(1e-8));
    CHECK(r.branch == ConversionBranch::Filtered);
    REQUIRE(r.protocol.has_value());
    CHECK(is_real_operation(*r.protocol));
    CHECK(r.protocol->completeness() == Completeness::SubNormalized);

    CHECK(pure_to_pure_probability(canonical_state(0.3), canonical_state(0.3)).probability ==
          doctest::Approx(1.0));
    CHECK(pure_to_pure_probability(canonical_state(0.0), canonical_state(0.0)).probability ==
          doctest::Approx(1.0));
    ConversionResult free_target =
        pure_to_pure_probability(canonical_state(0.4), canonical_state(1.0));
    CHECK(free_target.probability == doctest::Approx(1.0));
    CHECK(free_target.target_free);
}

TEST_CASE("filter_protocol contract") {
    CHECK_THROWS_AS(filter_protocol(0.2, 0.8), BadRegime);
    FilterProtocol ident = filter_protocol(0.5, 0.5);
    CHECK(ident.probability == doctest::Approx(1.0).epsilon(1e-12));
    FilterProtocol degenerate = filter_protocol(1.0, 0.0);
    CHECK(degenerate.probability == doctest::Approx(0.0).epsilon(1e-12));

    FilterProtocol fp = filter_protocol(0.8, 0.2);
    CHECK(is_real_operation(fp.channel));
    auto branches = apply_stochastic(fp.channel, DensityMatrix::from_pure(canonical_state(0.8)));
    const double wit =
        root_fidelity(branches.front().state.matrix(), branches.front().state.matrix().transpose());
    CHECK(wit == doctest::Approx(0.2).epsilon(1e-10));
    CHECK(branches.front().probability == doctest::Approx(fp.probability).epsilon(1e-12));
    // the filter's branch-0 weight is at least the Prop. 1 value
    CHECK(fp.probability >= 0.2276661209 - 1e-9);
}

TEST_CASE("pure_to_mixed_probability reference value") {
    ConversionResult r = pure_to_mixed_probability(canonical_state(0.9), reference_state());
    const double m_psi = 1.0 - std::sqrt(0.95);
    CHECK(m_psi == doctest::Approx(0.0253206).epsilon(1e-5));
    const double m_rho = 1.0 - std::sqrt((1.0 + std::sqrt(3.0) / 2.0) / 2.0);
    CHECK(r.probability == doctest::Approx(m_psi / m_rho).epsilon(1e-12));
    CHECK(r.probability == doctest::Approx(0.743).epsilon(1e-3));

    // rank-1 target consistency
    Sampler s(52);
    for (int t = 0; t < 50; ++t) {
        PureState psi = s.random_pure(2), phi = s.random_pure(2);
        CHECK(pure_to_mixed_probability(psi, DensityMatrix::from_pure(phi)).probability ==
              doctest::Approx(pure_to_pure_probability(psi, phi).probability).epsilon(1e-10));
    }
}

TEST_CASE("min_mgl_fidelity_ball") {
    DensityMatrix rho = reference_state();
    CHECK_THROWS_AS(min_mgl_fidelity_ball({rho, 1.5}), BadFidelity);

    MixedBallExtremum full = min_mgl_fidelity_ball({rho, 1.0});
    CHECK(full.value == doctest::Approx(measure_mixed(rho, MeasureKind::GeometricLike)).epsilon(1e-10));
    CHECK(max_abs_diff(full.state.matrix(), rho.matrix()) < 1e-7);

    MixedBallExtremum everything = min_mgl_fidelity_ball({rho, 0.0});
    CHECK(everything.value == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(is_real_state(everything.state, 1e-8));

    MixedBallExtremum ex = min_mgl_fidelity_ball({rho, 0.99});
    CHECK(ex.value == doctest::Approx(0.0130334).epsilon(1e-4));
    const double rf = root_fidelity(rho.matrix(), ex.state.matrix());
    CHECK(rf * rf >= 0.99 - 1e-9);
    CHECK(measure_mixed(ex.state, MeasureKind::GeometricLike) ==
          doctest::Approx(ex.value).epsilon(1e-7));
}

TEST_CASE("max_mgl_fidelity_ball") {
    PureState psi = canonical_state(0.5);
    CHECK_THROWS_AS(max_mgl_fidelity_ball(psi, -0.1), BadFidelity);
    PureBallExtremum f1 = max_mgl_fidelity_ball(psi, 1.0);
    CHECK(f1.value == doctest::Approx(measure_pure(psi, MeasureKind::GeometricLike)).epsilon(1e-12));

    PureBallExtremum ex = max_mgl_fidelity_ball(psi, 0.99);
    const double alpha = std::acos(1.0 - measure_pure(psi, MeasureKind::GeometricLike));
    const double k = std::acos(std::sqrt(0.99));
    CHECK(ex.value == doctest::Approx(1.0 - std::cos(std::min(alpha + k, M_PI / 4.0))).epsilon(1e-12));
    CHECK(measure_pure(ex.state, MeasureKind::GeometricLike) == doctest::Approx(ex.value).epsilon(1e-10));
    const cplx ov = inner(psi.amplitudes(), ex.state.amplitudes());
    CHECK(std::norm(ov) >= 0.99 - 1e-9);

    // cap branch
    PureBallExtremum capped = max_mgl_fidelity_ball(canonical_state(0.0), 0.9);
    CHECK(capped.value == doctest::Approx(1.0 - 1.0 / std::sqrt(2.0)).epsilon(1e-12));
}

TEST_CASE("stochastic_approx_probability") {
    PureState psi = canonical_state(0.9);
    DensityMatrix rho = reference_state();
    CHECK_THROWS_AS(stochastic_approx_probability(psi, rho, 2.0), BadFidelity);

    CHECK(stochastic_approx_probability(psi, rho, 1.0) ==
          doctest::Approx(pure_to_mixed_probability(psi, rho).probability).epsilon(1e-10));

    const double p = stochastic_approx_probability(psi, rho, 0.999);
    CHECK(p == doctest::Approx(0.9597).epsilon(1e-3));
    const double alpha_psi = std::acos(std::sqrt(0.95));
    const double alpha_rho = std::acos(1.0 - measure_mixed(rho, MeasureKind::GeometricLike));
    const double k = std::acos(std::sqrt(0.999));
    CHECK(p == doctest::Approx((1.0 - std::sqrt(0.95)) /
                               (1.0 - std::cos(alpha_rho - k))).epsilon(1e-12));
    CHECK(alpha_psi - alpha_rho + k < 0.0);

    // nonincreasing in f
    double prev = 2.0;
    for (double f = 0.9; f <= 1.0 + 1e-12; f += 0.01) {
        const double v = stochastic_approx_probability(psi, rho, std::min(f, 1.0));
        CHECK(v <= prev + 1e-12);
        prev = v;
    }
    // already within the ball
    CHECK(stochastic_approx_probability(canonical_state(0.2), rho, 0.9) == doctest::Approx(1.0));
}
