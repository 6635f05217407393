#ifndef BOGOLAT_BAND_MATRIX_HPP_
#define BOGOLAT_BAND_MATRIX_HPP_

#include <algorithm>
#include <cstddef>
#include <span>
#include <vector>

#include "bogolat/error.hpp"
#include "bogolat/scalar.hpp"

namespace bogolat {

/// Row-major dense square-or-rectangular matrix. Used for commutators,
/// Hankel sections and reference computations.
template <class T>
class DenseMatrix {
public:
    DenseMatrix() = default;
    DenseMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, T(0)) {}

    static DenseMatrix identity(std::size_t n) {
        DenseMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    std::span<const T> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }

    friend bool operator==(const DenseMatrix&, const DenseMatrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<T> data_;
};

template <class T>
DenseMatrix<T> operator*(const DenseMatrix<T>& a, const DenseMatrix<T>& b) {
    if (a.cols() != b.rows()) fail(ErrorKind::DimensionMismatch, "dense multiply: inner dimensions differ");
    DenseMatrix<T> c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            if (ScalarTraits<T>::is_zero(a(i, k))) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += a(i, k) * b(k, j);
        }
    return c;
}

template <class T>
DenseMatrix<T> operator-(const DenseMatrix<T>& a, const DenseMatrix<T>& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        fail(ErrorKind::DimensionMismatch, "dense subtract: shapes differ");
    DenseMatrix<T> c(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = a(i, j) - b(i, j);
    return c;
}

/// max_ij |x_ij|
template <class T>
T max_abs(const DenseMatrix<T>& m) {
    T best(0);
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) best = std::max(best, scalar_abs(m(i, j)));
    return best;
}

/// Square matrix with `lower` subdiagonals and `upper` superdiagonals,
/// stored densely per diagonal: entry (i, i + o) lives in band o + lower.
/// Entries outside the band read as zero and cannot be written.
template <class T>
class BandMatrix {
public:
    BandMatrix() = default;
    BandMatrix(std::size_t n, std::size_t lower, std::size_t upper)
    : n_(n), lower_(lower), upper_(upper), data_((lower + upper + 1) * n, T(0)) {}

    std::size_t size() const { return n_; }
    std::size_t lower() const { return lower_; }
    std::size_t upper() const { return upper_; }

    bool inside_band(std::size_t i, std::size_t j) const {
        return i < n_ && j < n_ && i <= j + lower_ && j <= i + upper_;
    }

    T at(std::size_t i, std::size_t j) const {
        if (!inside_band(i, j)) return T(0);
        return data_[slot(i, j)];
    }

    void set(std::size_t i, std::size_t j, const T& value) {
        if (!inside_band(i, j)) fail(ErrorKind::DimensionMismatch, "band matrix: entry outside the band");
        data_[slot(i, j)] = value;
    }

    /// y = M x
    std::vector<T> apply(std::span<const T> x) const {
        if (x.size() != n_) fail(ErrorKind::DimensionMismatch, "band apply: vector length differs from matrix size");
        std::vector<T> y(n_, T(0));
        for (std::size_t i = 0; i < n_; ++i) {
            const std::size_t j0 = i > lower_ ? i - lower_ : 0;
            const std::size_t j1 = std::min(n_ - 1, i + upper_);
            for (std::size_t j = j0; j <= j1; ++j) {
                const T& m = data_[slot(i, j)];
                if (!ScalarTraits<T>::is_zero(m)) y[i] += m * x[j];
            }
        }
        return y;
    }

    DenseMatrix<T> to_dense() const {
        DenseMatrix<T> d(n_, n_);
        for (std::size_t i = 0; i < n_; ++i)
            for (std::size_t j = (i > lower_ ? i - lower_ : 0); j < n_ && j <= i + upper_; ++j) d(i, j) = at(i, j);
        return d;
    }

    /// max_i sum_j |m_ij|, an upper bound on the spectral radius and on
    /// every |(M^k)_ij|^(1/k).
    T row_sum_norm() const {
        T best(0);
        for (std::size_t i = 0; i < n_; ++i) {
            T s(0);
            for (std::size_t j = (i > lower_ ? i - lower_ : 0); j < n_ && j <= i + upper_; ++j) s += scalar_abs(at(i, j));
            best = std::max(best, s);
        }
        return best;
    }

    friend bool operator==(const BandMatrix&, const BandMatrix&) = default;

private:
    std::size_t slot(std::size_t i, std::size_t j) const { return (j + lower_ - i) * n_ + i; }

    std::size_t n_ = 0;
    std::size_t lower_ = 0;
    std::size_t upper_ = 0;
    std::vector<T> data_;
};

/// Product of two band matrices; bandwidths add.
template <class T>
BandMatrix<T> multiply(const BandMatrix<T>& a, const BandMatrix<T>& b) {
    if (a.size() != b.size()) fail(ErrorKind::DimensionMismatch, "band multiply: sizes differ");
    const std::size_t n = a.size();
    BandMatrix<T> c(n, std::min(n ? n - 1 : 0, a.lower() + b.lower()), std::min(n ? n - 1 : 0, a.upper() + b.upper()));
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t k0 = i > a.lower() ? i - a.lower() : 0;
        const std::size_t k1 = std::min(n - 1, i + a.upper());
        for (std::size_t k = k0; k <= k1; ++k) {
            const T aik = a.at(i, k);
            if (ScalarTraits<T>::is_zero(aik)) continue;
            const std::size_t j0 = k > b.lower() ? k - b.lower() : 0;
            const std::size_t j1 = std::min(n - 1, k + b.upper());
            for (std::size_t j = j0; j <= j1; ++j) {
                const T bkj = b.at(k, j);
                if (!ScalarTraits<T>::is_zero(bkj)) c.set(i, j, c.at(i, j) + aik * bkj);
            }
        }
    }
    return c;
}

/// [L, A] = L A - A L, the right-hand side of the Lax equation.
template <class T>
DenseMatrix<T> commutator(const BandMatrix<T>& l, const BandMatrix<T>& a) {
    if (l.size() != a.size()) fail(ErrorKind::DimensionMismatch, "commutator: sizes differ");
    return multiply(l, a).to_dense() - multiply(a, l).to_dense();
}

/// Checks the structural invariants of a band operator with lower bandwidth
/// q and upper bandwidth r: unit entries on the r-th superdiagonal and
/// nonzero entries on the q-th subdiagonal for the first `active_columns`
/// columns (columns past the coefficient window may be zero-padded).
template <class T>
bool is_band_operator(const BandMatrix<T>& m, std::size_t active_columns) {
    const std::size_t n = m.size();
    for (std::size_t i = 0; i + m.upper() < n; ++i)
        if (m.at(i, i + m.upper()) != T(1)) return false;
    for (std::size_t i = 0; i < active_columns && i + m.lower() < n; ++i)
        if (ScalarTraits<T>::is_zero(m.at(i + m.lower(), i))) return false;
    return true;
}

/// Solves M x = rhs by banded Gaussian elimination with partial pivoting
/// (the factor keeps lower + upper superdiagonals, as in LAPACK gbsv).
/// Throws SingularShift when a pivot vanishes relative to the row scale.
std::vector<double> solve_banded(const BandMatrix<double>& m, std::span<const double> rhs);

}  // namespace bogolat

#endif  // BOGOLAT_BAND_MATRIX_HPP_
