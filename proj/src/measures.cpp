#include "imag/measures.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "imag/errors.hpp"
#include "imag/numerics.hpp"

namespace imag {

namespace {

constexpr double kDropWeight = 1e-12;

double measure_from_overlap(double r, MeasureKind kind) {
    r = std::clamp(r, 0.0, 1.0);
    if (kind == MeasureKind::Geometric) return (1.0 - r) / 2.0;
    return 1.0 - std::sqrt((1.0 + r) / 2.0);
}

// Unnormalized ensemble vectors w_j with sum_j w_j w_j^dag = rho.
struct RawEnsemble {
    std::vector<CVec> vectors;
};

Ensemble finalize(const RawEnsemble& raw) {
    Ensemble out;
    double total = 0.0;
    for (const auto& w : raw.vectors) {
        const double p = norm2(w);
        total += p * p;
    }
    for (const auto& w : raw.vectors) {
        const double n = norm2(w);
        const double p = n * n;
        if (p < kDropWeight) continue;
        CVec psi = w;
        for (auto& x : psi) x /= n;
        out.weights.push_back(p / total);
        out.members.emplace_back(std::move(psi));
    }
    if (out.weights.empty()) throw BadParameter("decomposition produced no members");
    return out;
}

RawEnsemble takagi_vectors(const DensityMatrix& rho) {
    const ComplexMatrix r = sqrt_psd(rho.matrix());
    const ComplexMatrix s = r.transpose() * r;  // complex symmetric
    TakagiFactorization tf = takagi(s);
    const ComplexMatrix w = r * tf.unitary.conjugate();
    RawEnsemble raw;
    for (int j = 0; j < w.dim(); ++j) {
        CVec col = w.column(j);
        if (norm2(col) * norm2(col) >= kDropWeight) raw.vectors.push_back(std::move(col));
    }
    return raw;
}

}  // namespace

double pure_measure_from_witness(double witness, MeasureKind kind) {
    return measure_from_overlap(witness, kind);
}

double measure_pure(const PureState& psi, MeasureKind kind) {
    return measure_from_overlap(psi.witness(), kind);
}

double measure_mixed(const DensityMatrix& rho, MeasureKind kind) {
    const double r = root_fidelity(rho.matrix(), rho.matrix().transpose());
    return measure_from_overlap(r, kind);
}

Ensemble optimal_decomposition(const DensityMatrix& rho) {
    return finalize(takagi_vectors(rho));
}

Ensemble equalized_decomposition(const DensityMatrix& rho) {
    RawEnsemble raw = takagi_vectors(rho);
    auto& w = raw.vectors;
    const int k = static_cast<int>(w.size());

    // target per-member witness equals r = sum_j w_j^T w_j (all real >= 0
    // along the real-rotation orbit of the Takagi start)
    double target = 0.0;
    for (const auto& v : w) target += bilinear(v, v).real();
    target = std::clamp(target, 0.0, 1.0);

    auto diag_s = [&](int i) { return bilinear(w[i], w[i]).real(); };
    auto weight = [&](int i) {
        const double n = norm2(w[i]);
        return n * n;
    };

    const int cap = 10 * rho.dim() * rho.dim();
    const double tol = 1e-9;
    for (int iter = 0; iter < cap; ++iter) {
        int imax = -1, imin = -1;
        double hmax = 0.0, hmin = 0.0;
        for (int i = 0; i < k; ++i) {
            const double p = weight(i);
            if (p < kDropWeight) continue;
            const double h = diag_s(i) - target * p;  // p*(A_i - target)
            if (imax < 0 || h > hmax) { hmax = h; imax = i; }
            if (imin < 0 || h < hmin) { hmin = h; imin = i; }
        }
        if (imax < 0 || (hmax <= tol && hmin >= -tol)) break;
        if (hmax <= 0.0 || hmin >= 0.0) break;  // numerically flat

        // bisect on the mixing angle: member imax hits the target witness
        const CVec u0 = w[imax];
        const CVec v0 = w[imin];
        auto h_at = [&](double alpha) {
            const double c = std::cos(alpha), s = std::sin(alpha);
            cplx suu = bilinear(u0, u0), svv = bilinear(v0, v0), suv = bilinear(u0, v0);
            cplx puv = inner(u0, v0);
            const double puu = norm2(u0) * norm2(u0), pvv = norm2(v0) * norm2(v0);
            const double g = (c * c * suu + s * s * svv + 2.0 * c * s * suv).real();
            const double p = c * c * puu + s * s * pvv + 2.0 * c * s * puv.real();
            return g - target * p;
        };
        double lo = 0.0, hi = M_PI / 2.0;
        // h(0) = hmax > 0, h(pi/2) = hmin < 0
        for (int b = 0; b < 80; ++b) {
            const double mid = 0.5 * (lo + hi);
            if (h_at(mid) > 0.0) lo = mid; else hi = mid;
        }
        const double alpha = 0.5 * (lo + hi);
        const double c = std::cos(alpha), s = std::sin(alpha);
        for (size_t i = 0; i < u0.size(); ++i) {
            w[imax][i] = c * u0[i] + s * v0[i];
            w[imin][i] = -s * u0[i] + c * v0[i];
        }
        if (iter == cap - 1) throw NoConvergence("equalization sweep cap exceeded");
    }
    return finalize(raw);
}

RoofResult convex_roof_oracle(const DensityMatrix& rho, MeasureKind kind, int restarts,
                              int ensemble_size, std::uint64_t seed) {
    const int n = rho.dim();
    EigenDecomposition ed = eig_hermitian(rho.matrix());
    int rank = 0;
    for (double lam : ed.eigenvalues)
        if (lam > 1e-12) ++rank;
    if (rank < 1) throw BadParameter("zero-rank state");
    if (ensemble_size < rank) throw BadEnsembleSize("ensemble_size below rank");
    const int k = ensemble_size;

    // B columns: sqrt(lambda_i) |mu_i>, i < rank
    std::vector<CVec> bcols(rank);
    for (int i = 0; i < rank; ++i) {
        bcols[i] = ed.eigenvectors.column(i);
        const double s = std::sqrt(ed.eigenvalues[i]);
        for (auto& x : bcols[i]) x *= s;
    }

    auto column_value = [&](const CVec& w) {
        const double nn = norm2(w);
        const double p = nn * nn;
        if (p < 1e-15) return 0.0;
        const double a = std::abs(bilinear(w, w)) / p;
        return p * measure_from_overlap(a, kind);
    };

    double best = -1.0;
    std::vector<CVec> best_cols;
    int total_sweeps = 0;

    for (int restart = 0; restart < restarts; ++restart) {
        std::mt19937_64 rng(seed + static_cast<std::uint64_t>(restart));
        std::uniform_real_distribution<double> unif(0.0, 1.0);
        auto gauss = [&]() {
            const double u1 = std::max(unif(rng), 1e-300);
            const double u2 = unif(rng);
            return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
        };

        // columns of the working d x k array: w_j = B (W e_j)
        std::vector<CVec> cols(k, CVec(n, cplx(0.0)));
        if (restart == 0) {
            for (int j = 0; j < rank; ++j) cols[j] = bcols[j];
        } else {
            // random isometry rows: QR of a k x k Ginibre, keep first `rank` rows
            std::vector<CVec> q(k, CVec(k));
            for (auto& row : q)
                for (auto& x : row) x = cplx(gauss(), gauss());
            for (int i = 0; i < k; ++i) {
                for (int pass = 0; pass < 2; ++pass)
                    for (int j = 0; j < i; ++j) {
                        const cplx d = inner(q[j], q[i]);
                        for (int t = 0; t < k; ++t) q[i][t] -= d * q[j][t];
                    }
                const double nn = norm2(q[i]);
                for (auto& x : q[i]) x /= nn;
            }
            for (int j = 0; j < k; ++j)
                for (int i = 0; i < rank; ++i)
                    for (int t = 0; t < n; ++t) cols[j][t] += bcols[i][t] * q[i][j];
        }

        double value = 0.0;
        for (const auto& c : cols) value += column_value(c);

        for (int sweep = 0; sweep < 300; ++sweep) {
            ++total_sweeps;
            const double before = value;
            for (int a = 0; a < k - 1; ++a) {
                for (int b = a + 1; b < k; ++b) {
                    const CVec& u = cols[a];
                    const CVec& v = cols[b];
                    const double puu = norm2(u) * norm2(u);
                    const double pvv = norm2(v) * norm2(v);
                    if (puu + pvv < 1e-15) continue;
                    const cplx puv = inner(u, v);
                    const cplx suu = bilinear(u, u);
                    const cplx svv = bilinear(v, v);
                    const cplx suv = bilinear(u, v);

                    auto pair_value = [&](double theta, double phi) {
                        const double c = std::cos(theta), s = std::sin(theta);
                        const cplx e = std::polar(1.0, phi);
                        // u' = c u + s e v ; v' = -s conj(e) u + c v
                        const double pu = c * c * puu + s * s * pvv + 2.0 * c * s * (e * puv).real();
                        const double pv = s * s * puu + c * c * pvv - 2.0 * c * s * (e * puv).real();
                        const cplx su = c * c * suu + s * s * e * e * svv + 2.0 * c * s * e * suv;
                        const cplx sv = s * s * std::conj(e) * std::conj(e) * suu + c * c * svv -
                                        2.0 * c * s * std::conj(e) * suv;
                        double val = 0.0;
                        if (pu > 1e-15) val += pu * measure_from_overlap(std::abs(su) / pu, kind);
                        if (pv > 1e-15) val += pv * measure_from_overlap(std::abs(sv) / pv, kind);
                        return val;
                    };

                    const double base = pair_value(0.0, 0.0);
                    double bt = 0.0, bp = 0.0, bv = base;
                    for (int it = 0; it < 10; ++it)
                        for (int ip = 0; ip < 16; ++ip) {
                            const double th = (it + 1) * (M_PI / 2.0) / 11.0;
                            const double ph = ip * (2.0 * M_PI) / 16.0;
                            const double pv2 = pair_value(th, ph);
                            if (pv2 < bv) { bv = pv2; bt = th; bp = ph; }
                        }
                    // pattern-search refinement; the acceptance margin keeps it
                    // from crawling along near-flat valleys one ulp at a time
                    double step = (M_PI / 2.0) / 11.0;
                    for (int guard = 0; step > 1e-7 && guard < 400; ++guard) {
                        bool moved = false;
                        for (const auto& [dt, dp] : {std::pair{step, 0.0}, {-step, 0.0},
                                                     {0.0, step}, {0.0, -step}}) {
                            const double v2 = pair_value(bt + dt, bp + dp);
                            if (v2 < bv - 1e-13) {
                                bv = v2;
                                bt += dt;
                                bp += dp;
                                moved = true;
                            }
                        }
                        if (!moved) step *= 0.5;
                    }
                    if (bv < base - 1e-14) {
                        const double c = std::cos(bt), s = std::sin(bt);
                        const cplx e = std::polar(1.0, bp);
                        for (int t = 0; t < n; ++t) {
                            const cplx ut = cols[a][t], vt = cols[b][t];
                            cols[a][t] = c * ut + s * e * vt;
                            cols[b][t] = -s * std::conj(e) * ut + c * vt;
                        }
                        value += bv - base;
                    }
                }
            }
            if (before - value < 1e-10) break;
        }

        if (best < 0.0 || value < best) {
            best = value;
            best_cols = cols;
        }
    }

    RoofResult out;
    out.value = best;
    out.iterations = total_sweeps;
    RawEnsemble raw;
    for (auto& c : best_cols)
        if (norm2(c) * norm2(c) >= kDropWeight) raw.vectors.push_back(std::move(c));
    out.ensemble = finalize(raw);
    return out;
}

}  // namespace imag
