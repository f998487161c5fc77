#include "imag/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "imag/errors.hpp"

namespace imag {

namespace {

constexpr double kHermitianTol = 1e-10;
constexpr double kPsdClamp = 1e-10;
constexpr int kMaxSweeps = 100;

double off_diagonal_norm(const ComplexMatrix& a) {
    double s = 0.0;
    for (int i = 0; i < a.dim(); ++i)
        for (int j = 0; j < a.dim(); ++j)
            if (i != j) s += std::norm(a(i, j));
    return std::sqrt(s);
}

double frobenius_norm(const ComplexMatrix& a) {
    double s = 0.0;
    for (int i = 0; i < a.dim(); ++i)
        for (int j = 0; j < a.dim(); ++j) s += std::norm(a(i, j));
    return std::sqrt(s);
}

void sort_descending(std::vector<double>& vals, ComplexMatrix& vecs) {
    const int n = static_cast<int>(vals.size());
    std::vector<int> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(), [&](int a, int b) { return vals[a] > vals[b]; });
    std::vector<double> sv(n);
    ComplexMatrix svec(n);
    for (int j = 0; j < n; ++j) {
        sv[j] = vals[idx[j]];
        svec.set_column(j, vecs.column(idx[j]));
    }
    vals = std::move(sv);
    vecs = std::move(svec);
}

// Groups consecutive values (descending) into clusters of spread <= tol.
std::vector<std::pair<int, int>> cluster_ranges(const std::vector<double>& d, double tol) {
    std::vector<std::pair<int, int>> out;
    const int n = static_cast<int>(d.size());
    int start = 0;
    for (int j = 1; j <= n; ++j) {
        if (j == n || d[start] - d[j] > tol) {
            out.emplace_back(start, j);
            start = j;
        }
    }
    return out;
}

}  // namespace

EigenDecomposition eig_hermitian(const ComplexMatrix& h) {
    if (!h.all_finite()) throw BadParameter("matrix has non-finite entries");
    if (h.hermiticity_error() > kHermitianTol)
        throw NotHermitian("max |H - H^dag| exceeds 1e-10");

    const int n = h.dim();
    ComplexMatrix a = h;
    // exact Hermitian symmetrization so rotations see consistent data
    for (int i = 0; i < n; ++i) {
        a(i, i) = cplx(a(i, i).real(), 0.0);
        for (int j = i + 1; j < n; ++j) {
            cplx m = 0.5 * (a(i, j) + std::conj(a(j, i)));
            a(i, j) = m;
            a(j, i) = std::conj(m);
        }
    }
    ComplexMatrix v = ComplexMatrix::identity(n);

    const double stop = 1e-14 * std::max(1.0, frobenius_norm(a));
    int sweep = 0;
    while (off_diagonal_norm(a) > stop) {
        if (++sweep > kMaxSweeps) throw NoConvergence("Jacobi sweep cap exceeded");
        for (int p = 0; p < n - 1; ++p) {
            for (int q = p + 1; q < n; ++q) {
                const cplx apq = a(p, q);
                const double absb = std::abs(apq);
                if (absb < 1e-300) continue;
                const cplx phase = apq / absb;  // e^{i beta}
                const double app = a(p, p).real();
                const double aqq = a(q, q).real();
                const double tau = (app - aqq) / (2.0 * absb);
                double t;
                if (tau >= 0.0)
                    t = 1.0 / (tau + std::sqrt(1.0 + tau * tau));
                else
                    t = -1.0 / (-tau + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;

                // U = [[c, -s e^{i beta}],[s e^{-i beta}, c]] on plane (p,q); A <- U^dag A U
                for (int i = 0; i < n; ++i) {
                    const cplx aip = a(i, p);
                    const cplx aiq = a(i, q);
                    a(i, p) = c * aip + s * std::conj(phase) * aiq;
                    a(i, q) = -s * phase * aip + c * aiq;
                }
                for (int j = 0; j < n; ++j) {
                    const cplx apj = a(p, j);
                    const cplx aqj = a(q, j);
                    a(p, j) = c * apj + s * phase * aqj;
                    a(q, j) = -s * std::conj(phase) * apj + c * aqj;
                }
                a(p, q) = 0.0;
                a(q, p) = 0.0;
                a(p, p) = cplx(a(p, p).real(), 0.0);
                a(q, q) = cplx(a(q, q).real(), 0.0);

                for (int i = 0; i < n; ++i) {
                    const cplx vip = v(i, p);
                    const cplx viq = v(i, q);
                    v(i, p) = c * vip + s * std::conj(phase) * viq;
                    v(i, q) = -s * phase * vip + c * viq;
                }
            }
        }
    }

    std::vector<double> vals(n);
    for (int i = 0; i < n; ++i) vals[i] = a(i, i).real();
    sort_descending(vals, v);
    return {std::move(vals), std::move(v)};
}

ComplexMatrix sqrt_psd(const ComplexMatrix& m) {
    EigenDecomposition ed = eig_hermitian(m);
    const int n = m.dim();
    // eigenvalues tiny relative to the largest are diagonalization roundoff of
    // rank-deficient input; sqrt would inflate them to ~1e-8
    const double floor_ = 1e-13 * std::max(ed.eigenvalues.front(), 0.0);
    for (double& lam : ed.eigenvalues) {
        if (lam < -kPsdClamp) throw NotPSD("eigenvalue below -1e-10");
        if (lam < floor_) lam = 0.0;
    }
    ComplexMatrix r(n);
    for (int k = 0; k < n; ++k) {
        const double s = std::sqrt(ed.eigenvalues[k]);
        if (s == 0.0) continue;
        const CVec vk = ed.eigenvectors.column(k);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) r(i, j) += s * vk[i] * std::conj(vk[j]);
    }
    // clean roundoff so r is exactly Hermitian
    for (int i = 0; i < n; ++i) {
        r(i, i) = cplx(r(i, i).real(), 0.0);
        for (int j = i + 1; j < n; ++j) {
            cplx mij = 0.5 * (r(i, j) + std::conj(r(j, i)));
            r(i, j) = mij;
            r(j, i) = std::conj(mij);
        }
    }
    return r;
}

double root_fidelity(const ComplexMatrix& rho, const ComplexMatrix& sigma) {
    if (rho.dim() != sigma.dim()) throw DimensionMismatch("state dims differ");
    if (rho.dim() == 2) {
        // qubit closed form F = tr(rho sigma) + 2 sqrt(det rho det sigma);
        // avoids sqrt of eigenvalue roundoff near rank deficiency
        const double tr_prod = (rho * sigma).trace().real();
        const double det_rho = (rho(0, 0) * rho(1, 1) - rho(0, 1) * rho(1, 0)).real();
        const double det_sigma = (sigma(0, 0) * sigma(1, 1) - sigma(0, 1) * sigma(1, 0)).real();
        const double dets = std::max(det_rho, 0.0) * std::max(det_sigma, 0.0);
        const double f = tr_prod + 2.0 * std::sqrt(dets);
        return std::clamp(std::sqrt(std::max(f, 0.0)), 0.0, 1.0);
    }
    const ComplexMatrix r = sqrt_psd(rho);
    ComplexMatrix m = r * sigma * r;
    for (int i = 0; i < m.dim(); ++i) {
        m(i, i) = cplx(m(i, i).real(), 0.0);
        for (int j = i + 1; j < m.dim(); ++j) {
            cplx mij = 0.5 * (m(i, j) + std::conj(m(j, i)));
            m(i, j) = mij;
            m(j, i) = std::conj(mij);
        }
    }
    EigenDecomposition ed = eig_hermitian(m);
    const double floor_ = 1e-13 * std::max(ed.eigenvalues.front(), 0.0);
    double sum = 0.0;
    for (double lam : ed.eigenvalues)
        if (lam > floor_) sum += std::sqrt(lam);
    return std::clamp(sum, 0.0, 1.0);
}

namespace {

// Simultaneously diagonalizes commuting real symmetric X, Y by a real
// orthogonal R; returns R and the diagonal phases q_j = x_j + i y_j.
void diagonalize_commuting_pair(const ComplexMatrix& x, const ComplexMatrix& y,
                                ComplexMatrix& r_out, std::vector<cplx>& q_out) {
    const int n = x.dim();
    EigenDecomposition ex = eig_hermitian(x);
    ComplexMatrix r(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) r(i, j) = cplx(ex.eigenvectors(i, j).real(), 0.0);

    // refine within degenerate eigenvalue clusters of X using Y
    ComplexMatrix yr = r.adjoint() * y * r;
    for (auto [lo, hi] : cluster_ranges(ex.eigenvalues, 1e-8)) {
        const int m = hi - lo;
        if (m < 2) continue;
        ComplexMatrix blk(m);
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j) blk(i, j) = cplx(yr(lo + i, lo + j).real(), 0.0);
        EigenDecomposition ey = eig_hermitian(blk);
        ComplexMatrix rcols(n);  // scratch: refined columns lo..hi-1
        for (int j = 0; j < m; ++j) {
            CVec col(n, cplx(0.0));
            for (int i = 0; i < m; ++i) {
                const double w = ey.eigenvectors(i, j).real();
                const CVec ri = r.column(lo + i);
                for (int k = 0; k < n; ++k) col[k] += w * ri[k];
            }
            rcols.set_column(lo + j, col);
        }
        for (int j = lo; j < hi; ++j) r.set_column(j, rcols.column(j));
    }

    ComplexMatrix xd = r.adjoint() * x * r;
    ComplexMatrix yd = r.adjoint() * y * r;
    q_out.resize(n);
    for (int j = 0; j < n; ++j) q_out[j] = cplx(xd(j, j).real(), yd(j, j).real());
    r_out = std::move(r);
}

}  // namespace

TakagiFactorization takagi(const ComplexMatrix& s) {
    if (!s.all_finite()) throw BadParameter("matrix has non-finite entries");
    if (s.symmetry_error() > kHermitianTol) throw NotSymmetric("max |S - S^T| exceeds 1e-10");

    const int n = s.dim();
    // P = S conj(S) is Hermitian PSD with eigenvalues D_j^2
    ComplexMatrix p = s * s.conjugate();
    for (int i = 0; i < n; ++i) {
        p(i, i) = cplx(p(i, i).real(), 0.0);
        for (int j = i + 1; j < n; ++j) {
            cplx mij = 0.5 * (p(i, j) + std::conj(p(j, i)));
            p(i, j) = mij;
            p(j, i) = std::conj(mij);
        }
    }
    EigenDecomposition ep = eig_hermitian(p);
    std::vector<double> d(n);
    for (int j = 0; j < n; ++j) d[j] = std::sqrt(std::max(ep.eigenvalues[j], 0.0));

    const ComplexMatrix& v = ep.eigenvectors;
    const ComplexMatrix t = v.adjoint() * s * v.conjugate();  // block diagonal over D clusters

    ComplexMatrix u = v;
    const double scale = std::max(1.0, d.empty() ? 1.0 : d[0]);
    for (auto [lo, hi] : cluster_ranges(d, 1e-8 * scale)) {
        const int m = hi - lo;
        double dmean = 0.0;
        for (int j = lo; j < hi; ++j) dmean += d[j];
        dmean /= m;
        if (dmean <= 1e-12) continue;  // null block: columns of V suffice

        // Q = T_block / dmean is symmetric unitary; need C with C C^T = Q.
        // Q = X + iY with commuting real symmetric X, Y; C = R e^{i phi/2} R^T.
        ComplexMatrix x(m), y(m);
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j) {
                cplx q = 0.5 * (t(lo + i, lo + j) + t(lo + j, lo + i)) / dmean;
                x(i, j) = cplx(q.real(), 0.0);
                y(i, j) = cplx(q.imag(), 0.0);
            }
        ComplexMatrix r(m);
        std::vector<cplx> q;
        diagonalize_commuting_pair(x, y, r, q);
        ComplexMatrix c(m);
        for (int k = 0; k < m; ++k) {
            const double phi = std::atan2(q[k].imag(), q[k].real());
            const cplx half = std::polar(1.0, phi / 2.0);
            for (int i = 0; i < m; ++i)
                for (int j = 0; j < m; ++j) c(i, j) += r(i, k) * half * r(j, k);
        }
        // U[:, block] = V[:, block] * C
        for (int j = 0; j < m; ++j) {
            CVec col(n, cplx(0.0));
            for (int k = 0; k < m; ++k) {
                const cplx w = c(k, j);
                for (int i = 0; i < n; ++i) col[i] += v(i, lo + k) * w;
            }
            u.set_column(lo + j, col);
        }
    }
    return {std::move(u), std::move(d)};
}

}  // namespace imag
