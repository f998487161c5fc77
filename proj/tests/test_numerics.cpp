#include <cmath>
#include <doctest.h>

#include "imag/errors.hpp"
#include "imag/matrix.hpp"
#include "imag/numerics.hpp"
#include "imag/sampling.hpp"

using namespace imag;

namespace {
const cplx I_(0.0, 1.0);
}

TEST_CASE("eig_hermitian diagonalizes the reference qubit state") {
    ComplexMatrix rho{{0.75, -0.25 * I_}, {0.25 * I_, 0.25}};
    EigenDecomposition ed = eig_hermitian(rho);
    CHECK(ed.eigenvalues[0] == doctest::Approx(0.8535533906).epsilon(1e-10));
    CHECK(ed.eigenvalues[1] == doctest::Approx(0.1464466094).epsilon(1e-10));
    // reconstruction
    ComplexMatrix rec(2);
    for (int j = 0; j < 2; ++j)
        rec += cplx(ed.eigenvalues[j]) * outer(ed.eigenvectors.column(j), ed.eigenvectors.column(j));
    CHECK(max_abs_diff(rec, rho) < 1e-12);
}

TEST_CASE("eig_hermitian on random Hermitian matrices") {
    Sampler s(11);
    for (int trial = 0; trial < 20; ++trial) {
        const int d = 2 + trial % 5;
        ComplexMatrix h(d);
        for (int i = 0; i < d; ++i) {
            h(i, i) = s.gauss();
            for (int j = i + 1; j < d; ++j) {
                h(i, j) = s.cgauss();
                h(j, i) = std::conj(h(i, j));
            }
        }
        EigenDecomposition ed = eig_hermitian(h);
        for (int j = 0; j + 1 < d; ++j) CHECK(ed.eigenvalues[j] >= ed.eigenvalues[j + 1]);
        ComplexMatrix rec(d);
        for (int j = 0; j < d; ++j)
            rec += cplx(ed.eigenvalues[j]) *
                   outer(ed.eigenvectors.column(j), ed.eigenvectors.column(j));
        CHECK(max_abs_diff(rec, h) < 1e-12);
        CHECK(max_abs_diff(ed.eigenvectors.adjoint() * ed.eigenvectors,
                           ComplexMatrix::identity(d)) < 1e-12);
    }
}

TEST_CASE("eig_hermitian rejects non-Hermitian input") {
    ComplexMatrix m{{0.0, 1.0}, {0.0, 0.0}};
    CHECK_THROWS_AS(eig_hermitian(m), NotHermitian);
}

TEST_CASE("sqrt_psd squares back and rejects indefinite input") {
    Sampler s(12);
    DensityMatrix rho = s.random_density(4);
    ComplexMatrix r = sqrt_psd(rho.matrix());
    CHECK(max_abs_diff(r * r, rho.matrix()) < 1e-12);
    ComplexMatrix neg{{1.0, 0.0}, {0.0, -0.5}};
    CHECK_THROWS_AS(sqrt_psd(neg), NotPSD);
}

TEST_CASE("root_fidelity reference values and symmetry") {
    ComplexMatrix rho{{0.75, -0.25 * I_}, {0.25 * I_, 0.25}};
    const double r = root_fidelity(rho, rho.transpose());
    CHECK(r == doctest::Approx(std::sqrt(3.0) / 2.0).epsilon(1e-12));

    Sampler s(13);
    for (int trial = 0; trial < 30; ++trial) {
        const int d = 2 + trial % 3;
        DensityMatrix a = s.random_density(d), b = s.random_density(d);
        CHECK(root_fidelity(a.matrix(), b.matrix()) ==
              doctest::Approx(root_fidelity(b.matrix(), a.matrix())).epsilon(1e-10));
        CHECK(root_fidelity(a.matrix(), a.matrix()) == doctest::Approx(1.0).epsilon(1e-10));
    }
}

TEST_CASE("root_fidelity handles rank-deficient qubits exactly") {
    ComplexMatrix pure{{1.0, 0.0}, {0.0, 0.0}};
    CHECK(root_fidelity(pure, pure) == doctest::Approx(1.0).epsilon(1e-14));
    ComplexMatrix other{{0.0, 0.0}, {0.0, 1.0}};
    CHECK(root_fidelity(pure, other) == doctest::Approx(0.0).epsilon(1e-14));
    CHECK_THROWS_AS(root_fidelity(pure, ComplexMatrix::identity(3)), DimensionMismatch);
}

TEST_CASE("takagi factorizes random complex symmetric matrices") {
    Sampler s(14);
    for (int trial = 0; trial < 30; ++trial) {
        const int d = 2 + trial % 5;
        ComplexMatrix m(d);
        for (int i = 0; i < d; ++i)
            for (int j = i; j < d; ++j) m(i, j) = m(j, i) = s.cgauss();
        TakagiFactorization tf = takagi(m);
        ComplexMatrix rec(d);
        for (int j = 0; j < d; ++j) {
            CVec u = tf.unitary.column(j), uc = u;
            for (auto& x : uc) x = std::conj(x);
            rec += cplx(tf.singular_values[j]) * outer(u, uc);  // u_j u_j^T
        }
        CHECK(max_abs_diff(rec, m) < 1e-10);
        CHECK(max_abs_diff(tf.unitary.adjoint() * tf.unitary, ComplexMatrix::identity(d)) < 1e-10);
        for (int j = 0; j + 1 < d; ++j) CHECK(tf.singular_values[j] >= tf.singular_values[j + 1]);
        for (double sv : tf.singular_values) CHECK(sv >= 0.0);
    }
}

TEST_CASE("takagi handles degenerate singular values") {
    // i * identity has all singular values 1
    ComplexMatrix m(3);
    for (int i = 0; i < 3; ++i) m(i, i) = I_;
    TakagiFactorization tf = takagi(m);
    ComplexMatrix rec(3);
    for (int j = 0; j < 3; ++j) {
        CVec u = tf.unitary.column(j), uc = u;
        for (auto& x : uc) x = std::conj(x);
        rec += cplx(tf.singular_values[j]) * outer(u, uc);
    }
    CHECK(max_abs_diff(rec, m) < 1e-10);
    for (double sv : tf.singular_values) CHECK(sv == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("takagi rejects non-symmetric input") {
    ComplexMatrix m{{0.0, 1.0}, {-1.0, 0.0}};
    CHECK_THROWS_AS(takagi(m), NotSymmetric);
}
