#pragma once

#include <vector>

#include "imag/matrix.hpp"

namespace imag {

/// Eigendecomposition of a Hermitian matrix: H = V diag(lambda) V^dag,
/// eigenvalues sorted descending, V unitary.
struct EigenDecomposition {
    std::vector<double> eigenvalues;
    ComplexMatrix eigenvectors;
};

/// Takagi factorization of a complex symmetric matrix: S = U diag(D) U^T,
/// U unitary, D nonnegative descending.
struct TakagiFactorization {
    ComplexMatrix unitary;
    std::vector<double> singular_values;
};

/// Cyclic Jacobi diagonalization. Requires H Hermitian within 1e-10.
EigenDecomposition eig_hermitian(const ComplexMatrix& h);

/// Hermitian PSD square root. Eigenvalues in [-1e-10, 0) are clamped to 0.
ComplexMatrix sqrt_psd(const ComplexMatrix& m);

/// Tr sqrt(sqrt(rho) sigma sqrt(rho)), clamped to [0,1]. Inputs must be
/// Hermitian PSD with equal dims (density matrices in practice).
double root_fidelity(const ComplexMatrix& rho, const ComplexMatrix& sigma);

TakagiFactorization takagi(const ComplexMatrix& s);

}  // namespace imag
