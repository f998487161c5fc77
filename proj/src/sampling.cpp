#include "imag/sampling.hpp"

#include <algorithm>
#include <cmath>

#include "imag/errors.hpp"
#include "imag/numerics.hpp"

namespace imag {

double Sampler::uniform() { return unif_(rng_); }

double Sampler::uniform(double lo, double hi) { return lo + (hi - lo) * unif_(rng_); }

double Sampler::gauss() {
    const double u1 = std::max(unif_(rng_), 1e-300);
    const double u2 = unif_(rng_);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
}

cplx Sampler::cgauss() { return cplx(gauss(), gauss()) / std::sqrt(2.0); }

CVec Sampler::random_unit_vector(int dim) {
    CVec v(dim);
    double nn;
    do {
        for (auto& x : v) x = cgauss();
        nn = norm2(v);
    } while (nn < 1e-8);
    for (auto& x : v) x /= nn;
    return v;
}

PureState Sampler::random_pure(int dim) { return PureState(random_unit_vector(dim)); }

DensityMatrix Sampler::random_density(int dim, int rank) {
    if (rank <= 0 || rank > dim) rank = dim;
    ComplexMatrix acc(dim);
    for (int r = 0; r < rank; ++r) {
        CVec g(dim);
        for (auto& x : g) x = cgauss();
        acc += outer(g, g);
    }
    acc *= cplx(1.0 / acc.trace().real());
    return DensityMatrix::validate(acc);
}

ComplexMatrix Sampler::random_real_orthogonal(int dim) {
    // QR of a real Gaussian matrix via modified Gram-Schmidt on columns
    std::vector<std::vector<double>> g(dim, std::vector<double>(dim));
    for (auto& row : g)
        for (auto& x : row) x = gauss();
    for (int j = 0; j < dim; ++j) {
        for (int pass = 0; pass < 2; ++pass)
            for (int i = 0; i < j; ++i) {
                double dot = 0.0;
                for (int r = 0; r < dim; ++r) dot += g[r][i] * g[r][j];
                for (int r = 0; r < dim; ++r) g[r][j] -= dot * g[r][i];
            }
        double nn = 0.0;
        for (int r = 0; r < dim; ++r) nn += g[r][j] * g[r][j];
        nn = std::sqrt(nn);
        for (int r = 0; r < dim; ++r) g[r][j] /= nn;
    }
    ComplexMatrix o(dim);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) o(i, j) = g[i][j];
    return o;
}

KrausChannel Sampler::random_subnormalized_real(int dim, int n_kraus) {
    KrausChannel base = random_real_channel(dim, n_kraus, rng_());
    ComplexMatrix filter(dim);
    for (int j = 0; j < dim; ++j) filter(j, j) = uniform(0.05, 0.999);
    std::vector<ComplexMatrix> ops;
    ops.reserve(n_kraus);
    for (const auto& k : base.kraus_ops()) ops.push_back(k * filter);
    return KrausChannel(std::move(ops));
}

DensityMatrix Sampler::sample_in_fidelity_ball(const DensityMatrix& center, double f) {
    if (!(f >= 0.0 && f <= 1.0)) throw BadFidelity("fidelity outside [0,1]");
    const int d = center.dim();
    const ComplexMatrix root = sqrt_psd(center.matrix());
    double t = ball_radius_;
    for (;;) {
        ComplexMatrix m = root;
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) m(i, j) += t * cgauss();
        ComplexMatrix cand = m * m.adjoint();
        const double tr = cand.trace().real();
        if (tr < 1e-12) {
            t *= 0.5;
            continue;
        }
        cand *= cplx(1.0 / tr);
        DensityMatrix rho = DensityMatrix::validate(cand);
        const double r = root_fidelity(center.matrix(), rho.matrix());
        if (r * r >= f) {
            ball_radius_ = std::min(t * 1.1, 2.0);
            return rho;
        }
        t *= 0.7;
    }
}

}  // namespace imag
