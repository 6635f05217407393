#ifndef BOGOLAT_MIURA_HPP_
#define BOGOLAT_MIURA_HPP_

#include <span>
#include <vector>

#include "bogolat/flow.hpp"
#include "bogolat/lattice.hpp"
#include "bogolat/moments.hpp"
#include "bogolat/scalar.hpp"

namespace bogolat {

/// a_0(0), ..., a_{p-2}(0): the free data of the inverse map.
template <class T>
struct MiuraSeeds {
    std::vector<T> values;

    static MiuraSeeds ones(int p) { return MiuraSeeds{std::vector<T>(static_cast<std::size_t>(p > 1 ? p - 1 : 0), T(1))}; }

    /// Throws InvalidArgument on a wrong count and ZeroCoefficient on a zero seed.
    void validate(int p) const;
};

/// b_i = a_i a_{i+1} ... a_{i+p-1} for every full window; the result has
/// count - p + 1 coefficients. Open-end lattices need at least 2p b
/// coefficients (n0 >= 2p - 1).
template <class T>
LatticeState<T> miura_forward(const LatticeState<T>& a);

/// Pointwise forward map along a product-lattice trajectory.
template <class T>
Trajectory<T> miura_forward(const Trajectory<T>& a);

/// a_0..a_{p-2} taken from `head`, then a_i = b_{i-p+1} / (a_{i-p+1} ... a_{i-1}).
template <class T>
LatticeState<T> miura_inverse(const LatticeState<T>& b, std::span<const T> head);

struct MiuraInverseOptions {
    /// Without co-integrated accumulators, fall back to composite Simpson on
    /// the stored samples (uniform grid required).
    bool allow_quadrature = true;
};

/// a_i(t) = a_i(0) exp(int_0^t b_{i+1}) for i <= p-2, and the recurrence
/// above for the remaining indices.
template <class F>
Trajectory<F> miura_inverse(const Trajectory<F>& b, const MiuraSeeds<F>& seeds, const MiuraInverseOptions& options = {});

/// S~_k^{1,l} = S_k^{l,1} / S_{l-1}^{l,1}: from an L1-type table (r = p,
/// q = 1) to an L2-type table (r = 1, q = p).
template <class T>
MomentTable<T> miura_moments_forward(const MomentTable<T>& s);

/// S_k^{l,1} = a_0(0) ... a_{l-2}(0) exp(E_l) S~_k^{1,l}, where E_l is the
/// integral of S~_{l+p}^{1,l} - S~_{p+1}^{1,1} over [0, t]; `exponents`
/// holds E_1..E_p (E_1 = 0). The exact backend accepts only zero exponents.
template <class T>
MomentTable<T> miura_moments_inverse(const MomentTable<T>& tilde, const MiuraSeeds<T>& seeds,
                                     std::span<const T> exponents);

/// E_1..E_p at every sample of an S~ history, by cumulative Simpson.
/// MissingHistory when the history is empty or does not match the times.
template <class F>
std::vector<std::vector<F>> miura_exponent_integrals(std::span<const MomentTable<F>> history, std::span<const F> times);

template <class T>
struct TransportReport {
    /// Leading minors of the transformed table.
    std::vector<T> transformed;
    /// The layered lower-bandwidth-p product on b = Miura(a).
    std::vector<T> closed_form;
    /// The same ladder in the form (b_{k-p} ... b_{k-2p+1})(...)^2 ... (b_{h1} ... b_0)^h.
    std::vector<T> transport;
    std::vector<int> mismatches;
    bool ok() const { return mismatches.empty(); }
};

/// Compares the minors of miura_moments_forward(moments(L1(a))) with both
/// closed forms on b = Miura(a), for k = 0..max_k.
TransportReport<Rational> verify_determinant_transport(const LatticeState<Rational>& a, int max_k);

/// Moment indices at which miura_moments_forward(moments(L1(a))) and
/// moments(L2(Miura(a))) differ, for k = 0..max_k (exact comparison for
/// rationals, relative 1e-9 for floats).
template <class T>
std::vector<MomentIndex> commuting_square_mismatches(const LatticeState<T>& a, int max_k);

}  // namespace bogolat

#endif  // BOGOLAT_MIURA_HPP_
