#ifndef BOGOLAT_HANKEL_HPP_
#define BOGOLAT_HANKEL_HPP_

#include <cstddef>
#include <span>
#include <vector>

#include "bogolat/band_matrix.hpp"
#include "bogolat/lattice.hpp"
#include "bogolat/moments.hpp"
#include "bogolat/scalar.hpp"

namespace bogolat {

/// alpha_{i,j} = S^{rem(i,r)+1, rem(j,q)+1}_{floor(i/r) + floor(j/q)}.
template <class T>
const T& alpha(const MomentTable<T>& table, int i, int j);

/// Deepest moment index read by H_k = (alpha_{i,j})_{i,j=0..k}.
int alpha_depth(int r, int q, int k);

/// H_k as a dense (k+1) x (k+1) matrix.
template <class T>
DenseMatrix<T> hankel_section(const MomentTable<T>& table, int k);

/// Determinant of a square matrix. Rationals: fraction-free Bareiss
/// elimination with row exchanges. Floats: LU with partial pivoting.
template <class T>
T determinant(const DenseMatrix<T>& m);

template <>
Rational determinant(const DenseMatrix<Rational>& m);

template <>
double determinant(const DenseMatrix<double>& m);

/// Float determinant with a conditioning check: throws NearSingular when a
/// pivot falls below rel_tol * max_ij |m_ij|.
double checked_determinant(const DenseMatrix<double>& m, double rel_tol = 1e-12);

/// Delta_{-1}, Delta_0, ..., Delta_K.
template <class T>
class DeterminantLadder {
public:
    DeterminantLadder() = default;
    explicit DeterminantLadder(std::vector<T> from_zero) : values_(std::move(from_zero)) {}

    int max_index() const { return static_cast<int>(values_.size()) - 1; }
    Backend backend() const { return ScalarTraits<T>::backend; }

    /// k = -1 gives 1.
    T operator[](int k) const {
        if (k < -1 || k > max_index()) fail(ErrorKind::IndexBeyondTable, "determinant ladder index out of range", k);
        return k < 0 ? T(1) : values_[static_cast<std::size_t>(k)];
    }

    const std::vector<T>& values() const { return values_; }

private:
    std::vector<T> values_;
};

/// Leading minors Delta_0..Delta_K of the structured Hankel array. A zero
/// minor raises DegenerateMoments (rationals) and a numerically singular one
/// raises NearSingular (floats); the index of the minor is attached.
template <class T>
DeterminantLadder<T> delta_ladder(const MomentTable<T>& table, int max_k);

/// Delta_0..Delta_K without any zero or conditioning test; vanishing minors
/// are reported as values (finite operators have rank-limited ladders).
template <class T>
std::vector<T> leading_minors(const MomentTable<T>& table, int max_k);

/// Delta_k = a_{k-1} a_{k-2}^2 ... a_0^k for L1-type operators.
template <class T>
T delta_closed_form_l1(std::span<const T> a, int k);

/// Layered product for a band operator with lower bandwidth q whose q-th
/// subdiagonal is c_0, c_1, ...: Delta_k = 1 for k < q, and for i = k - q,
/// Delta_k = (c_i ... c_{i-q+1}) (c_{i-q} ... c_{i-2q+1})^2 ... with the last
/// layer raised to floor(i/q) + 1. Entries with negative index read as 1,
/// entries past the end of c as 0.
template <class T>
T delta_closed_form_l2(std::span<const T> c, int k, int q);

/// (b_{k-p} ... b_{k-2p+1}) (b_{k-2p} ... b_{k-3p+1})^2 ... (b_{k-(h-1)p} ... b_{k-hp+1})^{h-1} (b_{h1} ... b_0)^h
/// with k = h p + h1, and 1 for k < p. The transported ladder of a product
/// lattice after the Miura map, written in the b coefficients.
template <class T>
T delta_transport_product(std::span<const T> b, int k, int p);

/// a_{i+q,i} = Delta_{i+q} Delta_{i-1} / (Delta_{i+q-1} Delta_i), i = 0..count-1.
template <class T>
std::vector<T> reconstruct_subdiagonal(const MomentTable<T>& table, int count);

/// Coefficients of a sparse (two-diagonal) operator: L1Type tables give a
/// product lattice of order r, L2Type tables a sum lattice of order q.
/// Checks normalization (DegenerateMoments) and the sparsity pattern
/// (SparsityViolated) before reconstructing.
template <class T>
LatticeState<T> reconstruct_sparse_lattice(const MomentTable<T>& table, SparsityKind kind, int count);

}  // namespace bogolat

#endif  // BOGOLAT_HANKEL_HPP_
