#include "imag/states.hpp"

#include <algorithm>
#include <cmath>

#include "imag/errors.hpp"
#include "imag/numerics.hpp"

namespace imag {

namespace {

constexpr double kNormDrift = 1e-8;
constexpr double kHermitianTol = 1e-10;
constexpr double kTraceTol = 1e-10;
constexpr double kPsdClamp = 1e-10;

double witness_of(const CVec& amp) {
    return std::abs(bilinear(amp, amp));
}

// real Gram-Schmidt step: v minus its projections onto unit rows
bool orthonormalize_against(std::vector<double>& v, const std::vector<std::vector<double>>& rows) {
    for (int pass = 0; pass < 2; ++pass) {
        for (const auto& r : rows) {
            double dot = 0.0;
            for (size_t i = 0; i < v.size(); ++i) dot += r[i] * v[i];
            for (size_t i = 0; i < v.size(); ++i) v[i] -= dot * r[i];
        }
    }
    double n = 0.0;
    for (double x : v) n += x * x;
    n = std::sqrt(n);
    if (n < 1e-8) return false;
    for (double& x : v) x /= n;
    return true;
}

}  // namespace

PureState::PureState(CVec amplitudes) : amp_(std::move(amplitudes)) {
    if (amp_.empty()) throw BadParameter("empty amplitude vector");
    for (const auto& x : amp_)
        if (!std::isfinite(x.real()) || !std::isfinite(x.imag()))
            throw BadParameter("non-finite amplitude");
    const double n = norm2(amp_);
    if (std::abs(n - 1.0) > kNormDrift) throw BadParameter("state vector not normalized");
    for (auto& x : amp_) x /= n;
    witness_ = witness_of(amp_);
}

ComplexMatrix PureState::projector() const {
    return outer(amp_, amp_);
}

double imaginarity_witness(const PureState& psi) {
    return psi.witness();
}

DensityMatrix DensityMatrix::validate(const ComplexMatrix& m) {
    if (!m.all_finite()) throw BadParameter("non-finite entry");
    if (m.hermiticity_error() > kHermitianTol) throw NotHermitian("density matrix");
    const double tr = m.trace().real();
    if (std::abs(tr - 1.0) > kTraceTol) throw BadTrace("trace deviates from 1 beyond 1e-10");

    EigenDecomposition ed = eig_hermitian(m);
    bool needs_clamp = false;
    for (double lam : ed.eigenvalues) {
        if (lam < -kPsdClamp) throw NotPSD("density matrix eigenvalue below -1e-10");
        if (lam < 0.0) needs_clamp = true;
    }
    ComplexMatrix out = m;
    if (needs_clamp || std::abs(tr - 1.0) > 0.0) {
        const int n = m.dim();
        double sum = 0.0;
        for (double& lam : ed.eigenvalues) {
            lam = std::max(lam, 0.0);
            sum += lam;
        }
        ComplexMatrix r(n);
        for (int k = 0; k < n; ++k) {
            const double w = ed.eigenvalues[k] / sum;
            if (w == 0.0) continue;
            const CVec vk = ed.eigenvectors.column(k);
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) r(i, j) += w * vk[i] * std::conj(vk[j]);
        }
        for (int i = 0; i < n; ++i) {
            r(i, i) = cplx(r(i, i).real(), 0.0);
            for (int j = i + 1; j < n; ++j) {
                cplx mij = 0.5 * (r(i, j) + std::conj(r(j, i)));
                r(i, j) = mij;
                r(j, i) = std::conj(mij);
            }
        }
        out = std::move(r);
    }
    return DensityMatrix(std::move(out));
}

DensityMatrix DensityMatrix::from_pure(const PureState& psi) {
    return validate(psi.projector());
}

ComplexMatrix Ensemble::reconstruct() const {
    if (weights.empty()) throw BadParameter("empty ensemble");
    ComplexMatrix r(members.front().dim());
    for (size_t j = 0; j < weights.size(); ++j) {
        const CVec& a = members[j].amplitudes();
        for (int i = 0; i < r.dim(); ++i)
            for (int k = 0; k < r.dim(); ++k) r(i, k) += weights[j] * a[i] * std::conj(a[k]);
    }
    return r;
}

double Ensemble::reconstruction_error(const DensityMatrix& rho) const {
    return max_abs_diff(reconstruct(), rho.matrix());
}

RealSplit real_split(const PureState& psi) {
    const CVec& amp = psi.amplitudes();
    const int n = psi.dim();
    const cplx s = bilinear(amp, amp);
    const double theta = (std::abs(s) < 1e-300) ? 0.0 : std::arg(s);
    const cplx rot = std::polar(1.0, -theta / 2.0);

    std::vector<double> x(n), y(n);
    for (int i = 0; i < n; ++i) {
        const cplx a = amp[i] * rot;
        x[i] = a.real();
        y[i] = a.imag();
    }
    double nx = 0.0, ny = 0.0;
    for (int i = 0; i < n; ++i) {
        nx += x[i] * x[i];
        ny += y[i] * y[i];
    }
    nx = std::sqrt(nx);
    ny = std::sqrt(ny);

    RealSplit out;
    out.alpha = std::atan2(ny, nx);
    out.a.resize(n);
    for (int i = 0; i < n; ++i) out.a[i] = x[i] / nx;
    out.a_perp.assign(n, 0.0);
    if (ny > 1e-9) {
        for (int i = 0; i < n; ++i) out.a_perp[i] = y[i] / ny;
    } else {
        // A = 1: any real unit vector orthogonal to a
        for (int j = 0; j < n; ++j) {
            std::vector<double> cand(n, 0.0);
            cand[j] = 1.0;
            if (orthonormalize_against(cand, {out.a})) {
                out.a_perp = cand;
                break;
            }
        }
        if (n == 1) throw DegenerateDimension("dim 1 has no orthogonal direction");
    }
    return out;
}

PureState canonical_state(double witness) {
    if (witness < 0.0 || witness > 1.0) throw BadParameter("witness outside [0,1]");
    return PureState({std::sqrt((1.0 + witness) / 2.0), cplx(0.0, std::sqrt((1.0 - witness) / 2.0))});
}

CanonicalForm canonical_form(const PureState& psi) {
    const int n = psi.dim();
    if (n < 2) throw DegenerateDimension("canonical form needs dim >= 2");
    const RealSplit sp = real_split(psi);

    std::vector<std::vector<double>> rows = {sp.a, sp.a_perp};
    for (int j = 0; j < n && static_cast<int>(rows.size()) < n; ++j) {
        std::vector<double> cand(n, 0.0);
        cand[j] = 1.0;
        if (orthonormalize_against(cand, rows)) rows.push_back(std::move(cand));
    }
    ComplexMatrix o(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) o(i, j) = rows[i][j];

    return {std::move(o), canonical_state(psi.witness())};
}

bool is_real_state(const DensityMatrix& rho, double tol) {
    return rho.matrix().max_abs_imag() <= tol;
}

}  // namespace imag
