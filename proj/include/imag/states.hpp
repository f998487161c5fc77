#pragma once

#include <vector>

#include "imag/matrix.hpp"

namespace imag {

/// Normalized complex vector with cached imaginarity witness A = |<psi*|psi>|.
class PureState {
public:
    explicit PureState(CVec amplitudes);

    int dim() const { return static_cast<int>(amp_.size()); }
    const CVec& amplitudes() const { return amp_; }
    double witness() const { return witness_; }

    ComplexMatrix projector() const;

private:
    CVec amp_;
    double witness_;
};

double imaginarity_witness(const PureState& psi);

/// Validated Hermitian, PSD, unit-trace state.
class DensityMatrix {
public:
    static DensityMatrix validate(const ComplexMatrix& m);
    static DensityMatrix from_pure(const PureState& psi);

    int dim() const { return m_.dim(); }
    const ComplexMatrix& matrix() const { return m_; }

private:
    explicit DensityMatrix(ComplexMatrix m) : m_(std::move(m)) {}
    ComplexMatrix m_;
};

/// Pure-state decomposition {p_j, |psi_j>}.
struct Ensemble {
    std::vector<double> weights;
    std::vector<PureState> members;

    ComplexMatrix reconstruct() const;
    double reconstruction_error(const DensityMatrix& rho) const;
};

struct CanonicalForm {
    ComplexMatrix orthogonal;  // real, O^T O = I
    PureState embedding;       // qubit state sqrt((1+A)/2)|0> + i sqrt((1-A)/2)|1>
};

/// Real orthogonal O mapping the phase-fixed state onto the qubit form; the
/// witness A is preserved.
CanonicalForm canonical_form(const PureState& psi);

/// The canonical qubit state of witness A.
PureState canonical_state(double witness);

bool is_real_state(const DensityMatrix& rho, double tol = 1e-10);

/// Splits the phase-fixed psi into real orthonormal (a, a_perp) with
/// psi ~ cos(alpha) a + i sin(alpha) a_perp, alpha in [0, pi/4].
struct RealSplit {
    std::vector<double> a;
    std::vector<double> a_perp;
    double alpha;
};
RealSplit real_split(const PureState& psi);

}  // namespace imag
