#ifndef BOGOLAT_MOMENTS_HPP_
#define BOGOLAT_MOMENTS_HPP_

#include <cstddef>
#include <string>
#include <vector>

#include "bogolat/band_matrix.hpp"
#include "bogolat/error.hpp"
#include "bogolat/scalar.hpp"

namespace bogolat {

enum class MomentSource { FromMatrix, FromEvolution, FromMiura };

/// Moments S_k^{m,n} = (M^k)_{m-1,n-1} of the Weyl matrix for k = 0..K,
/// m = 1..r, n = 1..q. Indices m and n are 1-based, matching the usual
/// layout of the r x q Weyl matrix.
template <class T>
class MomentTable {
public:
    MomentTable() = default;
    MomentTable(int r, int q, int max_index, MomentSource source = MomentSource::FromMatrix)
    : r_(r), q_(q), max_index_(max_index), source_(source),
      data_(static_cast<std::size_t>((max_index + 1) * r * q), T(0)) {
        if (r < 1 || q < 1 || max_index < 0) fail(ErrorKind::InvalidArgument, "moment table: invalid shape");
    }

    int r() const { return r_; }
    int q() const { return q_; }
    int max_index() const { return max_index_; }
    MomentSource source() const { return source_; }
    void set_source(MomentSource source) { source_ = source; }

    bool contains(int k, int m, int n) const {
        return k >= 0 && k <= max_index_ && m >= 1 && m <= r_ && n >= 1 && n <= q_;
    }

    const T& operator()(int k, int m, int n) const { return data_[slot(k, m, n)]; }
    T& operator()(int k, int m, int n) { return data_[slot(k, m, n)]; }

    /// Copy restricted to k = 0..max_index.
    MomentTable truncated(int max_index) const {
        if (max_index > max_index_) fail(ErrorKind::IndexBeyondTable, "moment table: cannot extend by truncation", max_index);
        MomentTable out(r_, q_, max_index, source_);
        for (int k = 0; k <= max_index; ++k)
            for (int m = 1; m <= r_; ++m)
                for (int n = 1; n <= q_; ++n) out(k, m, n) = (*this)(k, m, n);
        return out;
    }

    friend bool operator==(const MomentTable& a, const MomentTable& b) {
        return a.r_ == b.r_ && a.q_ == b.q_ && a.max_index_ == b.max_index_ && a.data_ == b.data_;
    }

private:
    std::size_t slot(int k, int m, int n) const {
        if (!contains(k, m, n))
            fail(ErrorKind::IndexBeyondTable,
                 "moment S_" + std::to_string(k) + "^{" + std::to_string(m) + "," + std::to_string(n) + "} outside the table", k);
        return static_cast<std::size_t>((k * r_ + (m - 1)) * q_ + (n - 1));
    }

    int r_ = 1;
    int q_ = 1;
    int max_index_ = -1;
    MomentSource source_ = MomentSource::FromMatrix;
    std::vector<T> data_;
};

/// How to treat the boundary of a finite matrix.
///  - FiniteOperator: the matrix is the operator itself (open-end lattices,
///    or a window that defines the zero-padded lattice being integrated).
///  - SemiInfiniteWindow: the matrix is a leading section of a semi-infinite
///    operator; moments must not depend on the cut, otherwise WindowTooSmall.
enum class TruncationPolicy { FiniteOperator, SemiInfiniteWindow };

/// Smallest section size whose moments up to index K coincide with those of
/// the semi-infinite band operator (upper bandwidth r, lower bandwidth q).
/// A walk of K steps of size -r..+q that starts in column n-1 < q and ends
/// in row m-1 < r can go no deeper than floor((K q r + 2 q r - q - r) / (q + r)).
std::size_t required_window(int r, int q, int max_index);

/// Iterated band application to the basis columns e_0..e_{q-1}; dense powers
/// are never formed.
template <class T>
MomentTable<T> compute_moments(const BandMatrix<T>& m, int max_index,
                               TruncationPolicy policy = TruncationPolicy::FiniteOperator);

/// (k, m, n) of a moment that breaks an expected identity.
struct MomentIndex {
    int k;
    int m;
    int n;
    friend bool operator==(const MomentIndex&, const MomentIndex&) = default;
};

/// Violations of S_l^{m,n} = delta_{m + l r, n} for n > l r, l = 0..floor(q/r).
template <class T>
std::vector<MomentIndex> check_normalization(const MomentTable<T>& table);

enum class SparsityKind { L1Type, L2Type, General };

/// Nonzero moments outside the pattern of a two-diagonal ("sparse") band
/// matrix. For L1-type tables (q = 1) the pattern is k = m-1 mod r+1, for
/// L2-type tables (r = 1) it is k = n-1 mod q+1. General applies the walk
/// count rule to any (r, q): S_k^{m,n} can be nonzero only when
/// k q - (m - n) is a nonnegative multiple of q + r not exceeding k (q + r).
template <class T>
std::vector<MomentIndex> check_sparsity(const MomentTable<T>& table, SparsityKind kind);

/// Weyl matrix entry (R_lambda e_{n-1}, e_{m-1}) obtained by solving
/// (lambda E - M) x = e_{n-1} on the finite matrix. Requires |lambda| above
/// the row-sum norm of M (LambdaInsideBound otherwise).
double weyl_entry(const BandMatrix<double>& m, double lambda, int row, int col);

/// sum_{k=0..K} S_k^{m,n} / lambda^{k+1}
double neumann_partial_sum(const MomentTable<double>& table, double lambda, int row, int col, int terms_max_index);

/// (norm / |lambda|)^{K+1} / (|lambda| - norm): bound on the omitted tail.
double neumann_tail_bound(double norm, double lambda, int terms_max_index);

}  // namespace bogolat

#endif  // BOGOLAT_MOMENTS_HPP_
