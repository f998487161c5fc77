#include "imag/matrix.hpp"

#include <cmath>
#include <cstdlib>

#include "imag/errors.hpp"

namespace imag {

ComplexMatrix::ComplexMatrix(int dim) : dim_(dim), a_(static_cast<size_t>(dim) * dim, cplx(0.0)) {
    if (dim <= 0) throw BadParameter("matrix dimension must be positive");
}

ComplexMatrix::ComplexMatrix(int dim, std::vector<cplx> entries) : dim_(dim), a_(std::move(entries)) {
    if (dim <= 0) throw BadParameter("matrix dimension must be positive");
    if (a_.size() != static_cast<size_t>(dim) * dim)
        throw DimensionMismatch("entry count does not match dim^2");
}

ComplexMatrix::ComplexMatrix(std::initializer_list<std::initializer_list<cplx>> rows)
    : dim_(static_cast<int>(rows.size())) {
    if (dim_ <= 0) throw BadParameter("matrix dimension must be positive");
    a_.reserve(static_cast<size_t>(dim_) * dim_);
    for (const auto& row : rows) {
        if (static_cast<int>(row.size()) != dim_)
            throw DimensionMismatch("row length does not match dim");
        for (const auto& x : row) a_.push_back(x);
    }
}

ComplexMatrix ComplexMatrix::identity(int dim) {
    ComplexMatrix m(dim);
    for (int i = 0; i < dim; ++i) m(i, i) = 1.0;
    return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
    ComplexMatrix r(dim_);
    for (int i = 0; i < dim_; ++i)
        for (int j = 0; j < dim_; ++j) r(i, j) = std::conj((*this)(j, i));
    return r;
}

ComplexMatrix ComplexMatrix::transpose() const {
    ComplexMatrix r(dim_);
    for (int i = 0; i < dim_; ++i)
        for (int j = 0; j < dim_; ++j) r(i, j) = (*this)(j, i);
    return r;
}

ComplexMatrix ComplexMatrix::conjugate() const {
    ComplexMatrix r(dim_);
    for (size_t k = 0; k < a_.size(); ++k) r.a_[k] = std::conj(a_[k]);
    return r;
}

cplx ComplexMatrix::trace() const {
    cplx t = 0.0;
    for (int i = 0; i < dim_; ++i) t += (*this)(i, i);
    return t;
}

CVec ComplexMatrix::column(int j) const {
    CVec v(dim_);
    for (int i = 0; i < dim_; ++i) v[i] = (*this)(i, j);
    return v;
}

void ComplexMatrix::set_column(int j, const CVec& v) {
    for (int i = 0; i < dim_; ++i) (*this)(i, j) = v[i];
}

double ComplexMatrix::max_abs() const {
    double m = 0.0;
    for (const auto& x : a_) m = std::max(m, std::abs(x));
    return m;
}

double ComplexMatrix::max_abs_imag() const {
    double m = 0.0;
    for (const auto& x : a_) m = std::max(m, std::abs(x.imag()));
    return m;
}

double ComplexMatrix::hermiticity_error() const {
    double m = 0.0;
    for (int i = 0; i < dim_; ++i)
        for (int j = 0; j < dim_; ++j)
            m = std::max(m, std::abs((*this)(i, j) - std::conj((*this)(j, i))));
    return m;
}

double ComplexMatrix::symmetry_error() const {
    double m = 0.0;
    for (int i = 0; i < dim_; ++i)
        for (int j = 0; j < dim_; ++j)
            m = std::max(m, std::abs((*this)(i, j) - (*this)(j, i)));
    return m;
}

bool ComplexMatrix::all_finite() const {
    for (const auto& x : a_)
        if (!std::isfinite(x.real()) || !std::isfinite(x.imag())) return false;
    return true;
}

CVec ComplexMatrix::apply(const CVec& v) const {
    if (static_cast<int>(v.size()) != dim_) throw DimensionMismatch("vector length does not match dim");
    CVec r(dim_, cplx(0.0));
    for (int i = 0; i < dim_; ++i) {
        cplx acc = 0.0;
        for (int j = 0; j < dim_; ++j) acc += (*this)(i, j) * v[j];
        r[i] = acc;
    }
    return r;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& o) {
    if (o.dim_ != dim_) throw DimensionMismatch("matrix dims differ");
    for (size_t k = 0; k < a_.size(); ++k) a_[k] += o.a_[k];
    return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& o) {
    if (o.dim_ != dim_) throw DimensionMismatch("matrix dims differ");
    for (size_t k = 0; k < a_.size(); ++k) a_[k] -= o.a_[k];
    return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(cplx s) {
    for (auto& x : a_) x *= s;
    return *this;
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.dim_ != b.dim_) throw DimensionMismatch("matrix dims differ");
    const int n = a.dim_;
    ComplexMatrix r(n);
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) {
            const cplx aik = a(i, k);
            if (aik == cplx(0.0)) continue;
            for (int j = 0; j < n; ++j) r(i, j) += aik * b(k, j);
        }
    return r;
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.dim() != b.dim()) throw DimensionMismatch("matrix dims differ");
    double m = 0.0;
    for (int i = 0; i < a.dim(); ++i)
        for (int j = 0; j < a.dim(); ++j) m = std::max(m, std::abs(a(i, j) - b(i, j)));
    return m;
}

double norm2(const CVec& v) {
    double s = 0.0;
    for (const auto& x : v) s += std::norm(x);
    return std::sqrt(s);
}

cplx inner(const CVec& a, const CVec& b) {
    cplx s = 0.0;
    for (size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
    return s;
}

cplx bilinear(const CVec& a, const CVec& b) {
    cplx s = 0.0;
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

ComplexMatrix outer(const CVec& a, const CVec& b) {
    ComplexMatrix r(static_cast<int>(a.size()));
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) r(static_cast<int>(i), static_cast<int>(j)) = a[i] * std::conj(b[j]);
    return r;
}

}  // namespace imag
