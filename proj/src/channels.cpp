#include "imag/channels.hpp"

#include <cmath>
#include <random>

#include "imag/errors.hpp"
#include "imag/numerics.hpp"

namespace imag {

namespace {

constexpr double kTol = 1e-10;

double clamp0(double x) { return x < 0.0 ? 0.0 : x; }

void check_parameter(double p) {
    if (!(p >= 0.0 && p <= 1.0)) throw BadParameter("channel parameter outside [0,1]");
}

}  // namespace

KrausChannel::KrausChannel(std::vector<ComplexMatrix> ops) : ops_(std::move(ops)) {
    if (ops_.empty()) throw NotTracePreserving("channel needs at least one Kraus operator");
    const int n = ops_.front().dim();
    ComplexMatrix sum(n);
    for (const auto& k : ops_) {
        if (k.dim() != n) throw DimensionMismatch("Kraus operator dims differ");
        if (!k.all_finite()) throw BadParameter("non-finite Kraus entry");
        sum += k.adjoint() * k;
    }
    if (max_abs_diff(sum, ComplexMatrix::identity(n)) <= kTol) {
        comp_ = Completeness::TracePreserving;
        return;
    }
    EigenDecomposition ed = eig_hermitian(sum);
    if (ed.eigenvalues.front() > 1.0 + kTol)
        throw NotTracePreserving("sum K^dag K exceeds identity");
    comp_ = Completeness::SubNormalized;
}

KrausChannel make_noise_channel(NoiseKind kind) {
    check_parameter(kind.parameter);
    const double q = kind.parameter;
    switch (kind.family) {
        case NoiseFamily::BitFlip: {
            const double sm = std::sqrt(q), sf = std::sqrt(1.0 - q);
            return KrausChannel({ComplexMatrix{{sm, 0.0}, {0.0, sm}},
                                 ComplexMatrix{{0.0, sf}, {sf, 0.0}}});
        }
        case NoiseFamily::PhaseDamping: {
            return KrausChannel({ComplexMatrix{{1.0, 0.0}, {0.0, std::sqrt(1.0 - q)}},
                                 ComplexMatrix{{0.0, 0.0}, {0.0, std::sqrt(q)}}});
        }
        case NoiseFamily::AmplitudeDamping: {
            return KrausChannel({ComplexMatrix{{1.0, 0.0}, {0.0, std::sqrt(1.0 - q)}},
                                 ComplexMatrix{{0.0, std::sqrt(q)}, {0.0, 0.0}}});
        }
    }
    throw BadParameter("unknown noise family");
}

DensityMatrix apply(const KrausChannel& channel, const DensityMatrix& rho) {
    if (channel.dim() != rho.dim()) throw DimensionMismatch("channel/state dims differ");
    if (channel.completeness() != Completeness::TracePreserving)
        throw NotTracePreserving("apply requires a trace-preserving channel");
    ComplexMatrix out(rho.dim());
    for (const auto& k : channel.kraus_ops()) out += k * rho.matrix() * k.adjoint();
    return DensityMatrix::validate(out);
}

bool is_real_operation(const KrausChannel& channel, double tol) {
    for (const auto& k : channel.kraus_ops())
        if (k.max_abs_imag() > tol) return false;
    return true;
}

std::vector<StochasticBranch> apply_stochastic(const KrausChannel& channel, const DensityMatrix& rho) {
    if (channel.dim() != rho.dim()) throw DimensionMismatch("channel/state dims differ");
    std::vector<StochasticBranch> out;
    for (const auto& k : channel.kraus_ops()) {
        ComplexMatrix branch = k * rho.matrix() * k.adjoint();
        const double p = branch.trace().real();
        if (p < 1e-12) continue;
        branch *= cplx(1.0 / p);
        out.push_back({p, DensityMatrix::validate(branch)});
    }
    return out;
}

double decay_closed_form(NoiseKind kind, double witness, MeasureKind measure) {
    check_parameter(kind.parameter);
    if (!(witness >= 0.0 && witness <= 1.0)) throw BadParameter("witness outside [0,1]");
    const double a = witness;
    // s and t as printed; u = sqrt(s-t) and w = sqrt(s+t) are evaluated through
    // the factored forms s -+ t = (x -+ y)^2, which avoid the catastrophic
    // cancellation of s - t near the real-output edges (e.g. A = 1).
    double s = 0.0, t = 0.0, u = 0.0, w = 0.0;
    switch (kind.family) {
        case NoiseFamily::BitFlip: {
            const double m = kind.parameter;
            s = a * a * (1.0 - 2.0 * m) * (1.0 - 2.0 * m) - 2.0 * (m - 1.0) * m;
            t = a * (1.0 - 2.0 * m) *
                std::sqrt(clamp0(a * a * (1.0 - 2.0 * m) * (1.0 - 2.0 * m) - 4.0 * (m - 1.0) * m));
            const double z = a * (1.0 - 2.0 * m);
            const double dd = std::sqrt(z * z + 4.0 * m * (1.0 - m));
            u = clamp0(dd - z) / std::sqrt(2.0);
            w = clamp0(dd + z) / std::sqrt(2.0);
            break;
        }
        case NoiseFamily::PhaseDamping: {
            const double n = kind.parameter;
            s = n - a * a * (n - 2.0);
            t = 2.0 * std::sqrt(clamp0(-(a * a * a * a) * n + a * a * n + a * a * a * a));
            const double y = std::sqrt(n + a * a * (1.0 - n));
            u = clamp0(y - a);
            w = y + a;
            break;
        }
        case NoiseFamily::AmplitudeDamping: {
            const double p = kind.parameter;
            s = a * a * (p - 2.0) * (p - 1.0) - 2.0 * a * (p - 1.0) * p + p * p + p;
            const double inner = a * (-p) + a + p;
            t = 2.0 * std::sqrt(clamp0((p - a * a * (p - 1.0)) * inner * inner));
            const double x = std::sqrt(p + a * a * (1.0 - p));
            u = std::abs(x - inner);
            w = x + inner;
            break;
        }
    }
    if (std::abs(u * u - (s - t)) > 1e-9 || std::abs(w * w - (s + t)) > 1e-9)
        throw BadParameter("decay evaluation drifted from the printed s, t forms");
    const double sqrt2 = std::sqrt(2.0);

    if (kind.family == NoiseFamily::BitFlip) {
        if (measure == MeasureKind::GeometricLike)
            return (2.0 * std::sqrt(clamp0((u + w) / sqrt2 + 1.0)) - 2.0 * std::sqrt(a + 1.0)) /
                   (2.0 * sqrt2);
        return (sqrt2 * (u + w) - 2.0 * a) / 4.0;
    }
    if (measure == MeasureKind::GeometricLike)
        return 0.5 * (std::sqrt(clamp0(u + w + 2.0)) - sqrt2 * std::sqrt(a + 1.0));
    return -a / 2.0 + u / 4.0 + w / 4.0;
}

double decay_simulated(NoiseKind kind, double witness, MeasureKind measure) {
    check_parameter(kind.parameter);
    const PureState psi = canonical_state(witness);
    const DensityMatrix in = DensityMatrix::from_pure(psi);
    const DensityMatrix out = apply(make_noise_channel(kind), in);
    return measure_pure(psi, measure) - measure_mixed(out, measure);
}

KrausChannel random_real_channel(int dim, int n_kraus, std::uint64_t seed) {
    if (dim < 1 || n_kraus < 1) throw BadParameter("dim and n_kraus must be positive");
    const int rows = dim * n_kraus;
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    auto gauss = [&]() {
        const double u1 = std::max(unif(rng), 1e-300);
        const double u2 = unif(rng);
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
    };

    // Gaussian real rows x dim, orthonormalize columns (modified Gram-Schmidt,
    // one re-orthogonalization pass)
    std::vector<std::vector<double>> g(rows, std::vector<double>(dim));
    for (auto& row : g)
        for (auto& x : row) x = gauss();
    for (int j = 0; j < dim; ++j) {
        for (int pass = 0; pass < 2; ++pass)
            for (int i = 0; i < j; ++i) {
                double dot = 0.0;
                for (int r = 0; r < rows; ++r) dot += g[r][i] * g[r][j];
                for (int r = 0; r < rows; ++r) g[r][j] -= dot * g[r][i];
            }
        double nn = 0.0;
        for (int r = 0; r < rows; ++r) nn += g[r][j] * g[r][j];
        nn = std::sqrt(nn);
        for (int r = 0; r < rows; ++r) g[r][j] /= nn;
    }

    std::vector<ComplexMatrix> ops;
    ops.reserve(n_kraus);
    for (int l = 0; l < n_kraus; ++l) {
        ComplexMatrix k(dim);
        for (int i = 0; i < dim; ++i)
            for (int j = 0; j < dim; ++j) k(i, j) = g[l * dim + i][j];
        ops.push_back(std::move(k));
    }
    return KrausChannel(std::move(ops));
}

}  // namespace imag
