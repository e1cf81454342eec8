// qufti/complex_matrix.hpp
//
// Dense complex matrices and the unitary wrapper used throughout the
// toolkit.  Storage is row-major; element access is 0-based.  Mode numbers
// in user-facing interfaces elsewhere are 1-based (matching the usual
// (i-1)(j-1) Fourier-matrix convention); translating between the two is the
// caller's job and is always documented at the call site.

#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "qufti/error.hpp"

namespace qufti {

using complex = std::complex<double>;

/// Dense complex matrix with finite entries.
class ComplexMatrix {
public:
    ComplexMatrix() = default;

    /// Zero-initialized rows x cols matrix.
    ComplexMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), entries_(rows * cols, complex(0.0, 0.0)) {}

    /// Takes ownership of row-major entries; validates length and finiteness.
    ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<complex> entries)
        : rows_(rows), cols_(cols), entries_(std::move(entries)) {
        if (entries_.size() != rows_ * cols_) {
            throw ArityError("ComplexMatrix: entry count " + std::to_string(entries_.size()) +
                             " does not equal rows*cols = " + std::to_string(rows_ * cols_));
        }
        for (const complex& z : entries_) {
            if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
                throw InvalidDimensionError("ComplexMatrix: non-finite entry");
            }
        }
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool is_square() const { return rows_ == cols_; }

    complex& operator()(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }
    const complex& operator()(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }

    /// Bounds-checked access.
    const complex& at(std::size_t r, std::size_t c) const {
        if (r >= rows_ || c >= cols_) {
            throw IndexError("ComplexMatrix::at: index (" + std::to_string(r) + "," +
                             std::to_string(c) + ") out of range for " + std::to_string(rows_) +
                             "x" + std::to_string(cols_));
        }
        return entries_[r * cols_ + c];
    }

    const std::vector<complex>& entries() const { return entries_; }

    /// Conjugate transpose.
    ComplexMatrix conjugate_transpose() const {
        ComplexMatrix out(cols_, rows_);
        for (std::size_t r = 0; r < rows_; ++r) {
            for (std::size_t c = 0; c < cols_; ++c) {
                out(c, r) = std::conj((*this)(r, c));
            }
        }
        return out;
    }

    static ComplexMatrix identity(std::size_t n) {
        ComplexMatrix out(n, n);
        for (std::size_t i = 0; i < n; ++i) out(i, i) = complex(1.0, 0.0);
        return out;
    }

    /// Largest |A_ij - B_ij|; matrices must share a shape.
    static double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
        if (a.rows() != b.rows() || a.cols() != b.cols()) {
            throw ArityError("max_abs_diff: shape mismatch");
        }
        double m = 0.0;
        for (std::size_t i = 0; i < a.entries_.size(); ++i) {
            m = std::max(m, std::abs(a.entries_[i] - b.entries_[i]));
        }
        return m;
    }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<complex> entries_;
};

/// Matrix product with shape checking.
inline ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.cols() != b.rows()) {
        throw ArityError("matrix product: inner dimensions " + std::to_string(a.cols()) + " and " +
                         std::to_string(b.rows()) + " differ");
    }
    ComplexMatrix out(a.rows(), b.cols());
    for (std::size_t r = 0; r < a.rows(); ++r) {
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const complex ark = a(r, k);
            if (ark == complex(0.0, 0.0)) continue;
            for (std::size_t c = 0; c < b.cols(); ++c) {
                out(r, c) += ark * b(k, c);
            }
        }
    }
    return out;
}

/// Max-norm unitarity defect ||M^dagger M - I||_max of a square matrix.
inline double unitarity_defect(const ComplexMatrix& m) {
    if (!m.is_square()) {
        throw ShapeError("unitarity_defect: matrix is not square");
    }
    const ComplexMatrix product = m.conjugate_transpose() * m;
    return ComplexMatrix::max_abs_diff(product, ComplexMatrix::identity(m.rows()));
}

/// Square complex matrix guaranteed unitary to within `kDefectTolerance`.
///
/// Construction verifies the invariant once; instances are immutable, so
/// they can be shared freely across threads.
class UnitaryMatrix {
public:
    /// Maximum tolerated ||M^dagger M - I||_max, roughly two orders of
    /// magnitude above double-precision accumulation error at dim <= 16.
    static constexpr double kDefectTolerance = 1e-12;

    explicit UnitaryMatrix(ComplexMatrix m) : matrix_(std::move(m)) {
        if (!matrix_.is_square()) {
            throw ShapeError("UnitaryMatrix: matrix is not square");
        }
        if (matrix_.rows() == 0) {
            throw InvalidDimensionError("UnitaryMatrix: dimension must be >= 1");
        }
        const double defect = unitarity_defect(matrix_);
        if (!(defect < kDefectTolerance)) {
            throw UnitarityError("UnitaryMatrix: unitarity defect " + std::to_string(defect) +
                                 " exceeds tolerance");
        }
    }

    std::size_t dim() const { return matrix_.rows(); }
    const complex& operator()(std::size_t r, std::size_t c) const { return matrix_(r, c); }
    const ComplexMatrix& matrix() const { return matrix_; }

    /// Conjugate transpose (again unitary).
    UnitaryMatrix adjoint() const { return UnitaryMatrix(matrix_.conjugate_transpose()); }

private:
    ComplexMatrix matrix_;
};

}  // namespace qufti
