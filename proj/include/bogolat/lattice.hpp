#ifndef BOGOLAT_LATTICE_HPP_
#define BOGOLAT_LATTICE_HPP_

#include <cstddef>
#include <string_view>
#include <utility>
#include <vector>

#include "bogolat/band_matrix.hpp"
#include "bogolat/scalar.hpp"

namespace bogolat {

/// Product lattice: da_i/dt = a_i (prod_{j=1..p} a_{i+j} - prod_{j=1..p} a_{i-j}).
/// Sum lattice:     db_i/dt = b_i (sum_{j=1..p} b_{i+j} - sum_{j=1..p} b_{i-j}).
enum class Family { Product, Sum };

/// OpenEnd: coefficients vanish outside 0..N. TruncatedSemiInfinite: a
/// finite window of a semi-infinite chain, zero-padded past the window.
enum class Boundary { OpenEnd, TruncatedSemiInfinite };

std::string_view to_string(Family family);
std::string_view to_string(Boundary boundary);

template <class T>
struct LatticeState {
    Family family = Family::Product;
    int order = 1;
    std::vector<T> coeffs;
    Boundary boundary = Boundary::OpenEnd;
    T time = T(0);

    std::size_t count() const { return coeffs.size(); }

    /// Zero outside the stored window.
    T coeff(std::ptrdiff_t i) const {
        if (i < 0 || i >= static_cast<std::ptrdiff_t>(coeffs.size())) return T(0);
        return coeffs[static_cast<std::size_t>(i)];
    }

    /// Throws InvalidArgument for order < 1 or an empty window, and
    /// ZeroCoefficient (with the index) for a vanishing coefficient.
    void validate() const;
};

/// Matrix size used by default: N+2 for L1 of an open-end product lattice,
/// W+p for a truncated window, N+p+1 (= count+p) for L2.
template <class T>
std::size_t default_lax_size(const LatticeState<T>& state);

/// L1: ones on the p-th superdiagonal, a_i at (i+1, i).
template <class T>
BandMatrix<T> build_l1(const LatticeState<T>& state, std::size_t size);

/// A1: a_i a_{i+1} ... a_{i+p} at (i+p+1, i).
template <class T>
BandMatrix<T> build_a1(const LatticeState<T>& state, std::size_t size);

/// L2: ones on the first superdiagonal, b_i at (i+p, i).
template <class T>
BandMatrix<T> build_l2(const LatticeState<T>& state, std::size_t size);

/// A2 = -(D + U) with D_ii = b_{i-p} + ... + b_i (terms with negative index
/// dropped) and ones on the (p+1)-th superdiagonal of U.
template <class T>
BandMatrix<T> build_a2(const LatticeState<T>& state, std::size_t size);

template <class T>
std::pair<BandMatrix<T>, BandMatrix<T>> lax_pair(const LatticeState<T>& state, std::size_t size);

template <class T>
std::pair<BandMatrix<T>, BandMatrix<T>> lax_pair(const LatticeState<T>& state) {
    return lax_pair(state, default_lax_size(state));
}

/// The L matrix of the family (L1 or L2) at its default size.
template <class T>
BandMatrix<T> lax_matrix(const LatticeState<T>& state) {
    return state.family == Family::Product ? build_l1(state, default_lax_size(state))
                                           : build_l2(state, default_lax_size(state));
}

/// Right-hand side of the lattice equations with zero padding outside the
/// window. Instantiated for Rational, double and long double.
template <class T>
std::vector<T> lattice_rhs(Family family, int order, std::span<const T> coeffs);

template <class T>
std::vector<T> lattice_rhs(const LatticeState<T>& state) {
    return lattice_rhs<T>(state.family, state.order, state.coeffs);
}

/// max |dL/dt - [L, A]| where dL/dt places the lattice right-hand side on
/// the coefficient diagonal of L. Exactly zero in rational arithmetic.
template <class T>
T lax_residual(const LatticeState<T>& state);

/// Same, for an explicitly given pair (used to detect broken pairs).
template <class T>
T lax_residual(const LatticeState<T>& state, const BandMatrix<T>& l, const BandMatrix<T>& a);

}  // namespace bogolat

#endif  // BOGOLAT_LATTICE_HPP_
