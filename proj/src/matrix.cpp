#include "nrange/matrix.hpp"

#include <algorithm>
#include <cmath>

#include "nrange/errors.hpp"

namespace nrange {

CMatrix CMatrix::identity(std::size_t n) {
    CMatrix m(n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

CMatrix CMatrix::diagonal(std::span<const cplx> diag) {
    CMatrix m(diag.size());
    for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
    return m;
}

CMatrix CMatrix::from_rows(std::initializer_list<std::initializer_list<cplx>> rows) {
    const std::size_t r = rows.size();
    const std::size_t c = r == 0 ? 0 : rows.begin()->size();
    CMatrix m(r, c);
    std::size_t i = 0;
    for (const auto& row : rows) {
        if (row.size() != c) throw Error(ErrorKind::InvalidMatrix, "ragged row list");
        std::size_t j = 0;
        for (const auto& v : row) m(i, j++) = v;
        ++i;
    }
    return m;
}

CMatrix CMatrix::adjoint() const {
    CMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) t(j, i) = std::conj((*this)(i, j));
    return t;
}

std::vector<cplx> CMatrix::column(std::size_t j) const {
    std::vector<cplx> v(rows_);
    for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
    return v;
}

double CMatrix::frobenius_norm() const noexcept {
    double s = 0.0;
    for (const auto& z : data_) s += std::norm(z);
    return std::sqrt(s);
}

double CMatrix::max_abs() const noexcept {
    double m = 0.0;
    for (const auto& z : data_) m = std::max(m, std::abs(z));
    return m;
}

bool CMatrix::all_finite() const noexcept {
    return std::all_of(data_.begin(), data_.end(),
                       [](const cplx& z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); });
}

bool CMatrix::is_zero() const noexcept {
    return std::all_of(data_.begin(), data_.end(), [](const cplx& z) { return z == cplx{}; });
}

CMatrix& CMatrix::operator+=(const CMatrix& rhs) {
    if (rows_ != rhs.rows_ || cols_ != rhs.cols_) throw Error(ErrorKind::DimensionMismatch, "matrix sum");
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += rhs.data_[k];
    return *this;
}

CMatrix& CMatrix::operator-=(const CMatrix& rhs) {
    if (rows_ != rhs.rows_ || cols_ != rhs.cols_) throw Error(ErrorKind::DimensionMismatch, "matrix difference");
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= rhs.data_[k];
    return *this;
}

CMatrix& CMatrix::operator*=(cplx s) noexcept {
    for (auto& z : data_) z *= s;
    return *this;
}

CMatrix operator*(const CMatrix& a, const CMatrix& b) {
    if (a.cols() != b.rows()) throw Error(ErrorKind::DimensionMismatch, "matrix product");
    CMatrix c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const cplx aik = a(i, k);
            if (aik == cplx{}) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
        }
    return c;
}

CMatrix operator+(CMatrix a, const CMatrix& b) { return a += b; }
CMatrix operator-(CMatrix a, const CMatrix& b) { return a -= b; }
CMatrix operator*(cplx s, CMatrix a) { return a *= s; }

CMatrix gram(const CMatrix& a) {
    const std::size_t n = a.cols();
    CMatrix g(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i; j < n; ++j) {
            cplx s{};
            for (std::size_t k = 0; k < a.rows(); ++k) s += std::conj(a(k, i)) * a(k, j);
            g(i, j) = s;
            g(j, i) = std::conj(s);
        }
        g(i, i) = g(i, i).real();
    }
    return g;
}

CMatrix rotated_hermitian_part(const CMatrix& a, double theta) {
    const std::size_t n = a.rows();
    const cplx phase = std::polar(1.0, -theta);
    CMatrix h(n);
    for (std::size_t i = 0; i < n; ++i) {
        h(i, i) = (phase * a(i, i)).real();
        for (std::size_t j = i + 1; j < n; ++j) {
            const cplx v = 0.5 * (phase * a(i, j) + std::conj(phase * a(j, i)));
            h(i, j) = v;
            h(j, i) = std::conj(v);
        }
    }
    return h;
}

double commutator_defect(const CMatrix& a) {
    const CMatrix ah = a.adjoint();
    return (ah * a - a * ah).frobenius_norm();
}

}  // namespace nrange
