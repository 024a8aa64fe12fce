#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace nrange {

using cplx = std::complex<double>;

/// Dense complex matrix, row-major. Square matrices are the library's input
/// type; rectangular shapes appear only for subspace bases and off-diagonal blocks.
class CMatrix {
public:
    CMatrix() = default;
    CMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
    explicit CMatrix(std::size_t n) : CMatrix(n, n) {}

    static CMatrix identity(std::size_t n);
    static CMatrix diagonal(std::span<const cplx> diag);
    static CMatrix from_rows(std::initializer_list<std::initializer_list<cplx>> rows);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool is_square() const noexcept { return rows_ == cols_; }
    bool empty() const noexcept { return data_.empty(); }

    cplx& operator()(std::size_t i, std::size_t j) noexcept { return data_[i * cols_ + j]; }
    const cplx& operator()(std::size_t i, std::size_t j) const noexcept { return data_[i * cols_ + j]; }

    std::span<cplx> data() noexcept { return data_; }
    std::span<const cplx> data() const noexcept { return data_; }

    CMatrix adjoint() const;
    /// Column j as a vector.
    std::vector<cplx> column(std::size_t j) const;

    double frobenius_norm() const noexcept;
    double max_abs() const noexcept;
    bool all_finite() const noexcept;
    bool is_zero() const noexcept;

    CMatrix& operator+=(const CMatrix& rhs);
    CMatrix& operator-=(const CMatrix& rhs);
    CMatrix& operator*=(cplx s) noexcept;

    friend bool operator==(const CMatrix&, const CMatrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<cplx> data_;
};

CMatrix operator*(const CMatrix& a, const CMatrix& b);
CMatrix operator+(CMatrix a, const CMatrix& b);
CMatrix operator-(CMatrix a, const CMatrix& b);
CMatrix operator*(cplx s, CMatrix a);

/// A^* A, Hermitian by construction (lower triangle mirrored from the upper).
CMatrix gram(const CMatrix& a);

/// Re(e^{-i theta} A) = (e^{-i theta} A + e^{i theta} A^*) / 2, exactly Hermitian.
CMatrix rotated_hermitian_part(const CMatrix& a, double theta);

/// ||A^*A - AA^*||_F
double commutator_defect(const CMatrix& a);

}  // namespace nrange
