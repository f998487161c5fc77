#pragma once

#include <complex>
#include <initializer_list>
#include <vector>

namespace imag {

using cplx = std::complex<double>;
using CVec = std::vector<cplx>;

/// Dense complex square matrix, row-major. The substrate for all operators;
/// intended for small dimensions (d <= 16).
class ComplexMatrix {
public:
    explicit ComplexMatrix(int dim);
    ComplexMatrix(int dim, std::vector<cplx> entries);
    ComplexMatrix(std::initializer_list<std::initializer_list<cplx>> rows);

    static ComplexMatrix identity(int dim);

    int dim() const { return dim_; }
    cplx& operator()(int i, int j) { return a_[static_cast<size_t>(i) * dim_ + j]; }
    const cplx& operator()(int i, int j) const { return a_[static_cast<size_t>(i) * dim_ + j]; }
    const std::vector<cplx>& entries() const { return a_; }

    ComplexMatrix adjoint() const;
    ComplexMatrix transpose() const;
    ComplexMatrix conjugate() const;
    cplx trace() const;

    CVec column(int j) const;
    void set_column(int j, const CVec& v);

    double max_abs() const;
    double max_abs_imag() const;
    double hermiticity_error() const;  // max |A - A^dag| entrywise
    double symmetry_error() const;     // max |A - A^T| entrywise
    bool all_finite() const;

    CVec apply(const CVec& v) const;

    ComplexMatrix& operator+=(const ComplexMatrix& o);
    ComplexMatrix& operator-=(const ComplexMatrix& o);
    ComplexMatrix& operator*=(cplx s);

    friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);
    friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
    friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
    friend ComplexMatrix operator*(cplx s, ComplexMatrix a) { return a *= s; }

private:
    int dim_;
    std::vector<cplx> a_;
};

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);

// vector helpers
double norm2(const CVec& v);
cplx inner(const CVec& a, const CVec& b);     // <a|b> = sum conj(a_i) b_i
cplx bilinear(const CVec& a, const CVec& b);  // a^T b = sum a_i b_i
ComplexMatrix outer(const CVec& a, const CVec& b);  // |a><b|

}  // namespace imag
