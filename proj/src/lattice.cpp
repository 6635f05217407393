#include "bogolat/lattice.hpp"

#include <string>

namespace bogolat {

std::string_view to_string(Family family) {
    return family == Family::Product ? "a" : "b";
}

std::string_view to_string(Boundary boundary) {
    return boundary == Boundary::OpenEnd ? "open-end" : "truncated";
}

template <class T>
void LatticeState<T>::validate() const {
    if (order < 1) fail(ErrorKind::InvalidArgument, "lattice order must be positive");
    if (coeffs.empty()) fail(ErrorKind::InvalidArgument, "lattice has no coefficients");
    for (std::size_t i = 0; i < coeffs.size(); ++i)
        if (ScalarTraits<T>::is_zero(coeffs[i]))
            fail(ErrorKind::ZeroCoefficient, "coefficient " + std::to_string(i) + " is zero", static_cast<std::ptrdiff_t>(i));
}

template <class T>
std::size_t default_lax_size(const LatticeState<T>& state) {
    const std::size_t p = static_cast<std::size_t>(state.order);
    if (state.family == Family::Product)
        return state.boundary == Boundary::OpenEnd ? state.count() + 1 : state.count() + p;
    return state.count() + p;
}

namespace {

template <class T>
void require_family(const LatticeState<T>& state, Family family, const char* who) {
    if (state.family != family)
        fail(ErrorKind::InvalidArgument, std::string(who) + ": lattice family mismatch");
    state.validate();
}

void require_size(std::size_t size, std::size_t minimum, const char* who) {
    if (size < minimum)
        fail(ErrorKind::DimensionMismatch, std::string(who) + ": matrix size " + std::to_string(size) +
                                               " cannot hold the coefficient window (need " + std::to_string(minimum) + ")");
}

template <class T>
T window_product(const LatticeState<T>& state, std::ptrdiff_t first, std::ptrdiff_t len) {
    T prod(1);
    for (std::ptrdiff_t j = 0; j < len; ++j) prod *= state.coeff(first + j);
    return prod;
}

}  // namespace

template <class T>
BandMatrix<T> build_l1(const LatticeState<T>& state, std::size_t size) {
    require_family(state, Family::Product, "build_l1");
    require_size(size, state.count() + 1, "build_l1");
    const std::size_t p = static_cast<std::size_t>(state.order);
    BandMatrix<T> l(size, 1, p);
    for (std::size_t i = 0; i + p < size; ++i) l.set(i, i + p, T(1));
    for (std::size_t i = 0; i < state.count(); ++i) l.set(i + 1, i, state.coeffs[i]);
    return l;
}

template <class T>
BandMatrix<T> build_a1(const LatticeState<T>& state, std::size_t size) {
    require_family(state, Family::Product, "build_a1");
    require_size(size, state.count() + 1, "build_a1");
    const std::size_t p = static_cast<std::size_t>(state.order);
    BandMatrix<T> a(size, p + 1, 0);
    for (std::size_t i = 0; i + p + 1 < size; ++i)
        a.set(i + p + 1, i, window_product(state, static_cast<std::ptrdiff_t>(i), static_cast<std::ptrdiff_t>(p + 1)));
    return a;
}

template <class T>
BandMatrix<T> build_l2(const LatticeState<T>& state, std::size_t size) {
    require_family(state, Family::Sum, "build_l2");
    const std::size_t p = static_cast<std::size_t>(state.order);
    require_size(size, state.count() + p, "build_l2");
    BandMatrix<T> l(size, p, 1);
    for (std::size_t i = 0; i + 1 < size; ++i) l.set(i, i + 1, T(1));
    for (std::size_t i = 0; i < state.count(); ++i) l.set(i + p, i, state.coeffs[i]);
    return l;
}

template <class T>
BandMatrix<T> build_a2(const LatticeState<T>& state, std::size_t size) {
    require_family(state, Family::Sum, "build_a2");
    const std::size_t p = static_cast<std::size_t>(state.order);
    require_size(size, state.count() + p, "build_a2");
    BandMatrix<T> a(size, 0, p + 1);
    for (std::size_t i = 0; i < size; ++i) {
        T s(0);
        for (std::size_t l = (i > p ? i - p : 0); l <= i; ++l) s += state.coeff(static_cast<std::ptrdiff_t>(l));
        a.set(i, i, -s);
        if (i + p + 1 < size) a.set(i, i + p + 1, T(-1));
    }
    return a;
}

template <class T>
std::pair<BandMatrix<T>, BandMatrix<T>> lax_pair(const LatticeState<T>& state, std::size_t size) {
    if (state.family == Family::Product) return {build_l1(state, size), build_a1(state, size)};
    return {build_l2(state, size), build_a2(state, size)};
}

template <class T>
std::vector<T> lattice_rhs(Family family, int order, std::span<const T> coeffs) {
    const auto n = static_cast<std::ptrdiff_t>(coeffs.size());
    auto at = [&](std::ptrdiff_t i) { return (i < 0 || i >= n) ? T(0) : coeffs[static_cast<std::size_t>(i)]; };
    std::vector<T> out(coeffs.size(), T(0));
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        if (family == Family::Product) {
            T ahead(1), behind(1);
            for (int j = 1; j <= order; ++j) {
                ahead *= at(i + j);
                behind *= at(i - j);
            }
            out[static_cast<std::size_t>(i)] = at(i) * (ahead - behind);
        } else {
            T ahead(0), behind(0);
            for (int j = 1; j <= order; ++j) {
                ahead += at(i + j);
                behind += at(i - j);
            }
            out[static_cast<std::size_t>(i)] = at(i) * (ahead - behind);
        }
    }
    return out;
}

template <class T>
T lax_residual(const LatticeState<T>& state, const BandMatrix<T>& l, const BandMatrix<T>& a) {
    const std::vector<T> rate = lattice_rhs(state);
    const std::size_t offset = state.family == Family::Product ? 1 : static_cast<std::size_t>(state.order);
    DenseMatrix<T> dl(l.size(), l.size());
    for (std::size_t i = 0; i < rate.size(); ++i) dl(i + offset, i) = rate[i];
    return max_abs(dl - commutator(l, a));
}

template <class T>
T lax_residual(const LatticeState<T>& state) {
    const auto [l, a] = lax_pair(state);
    return lax_residual(state, l, a);
}

#define BOGOLAT_INSTANTIATE(T)                                                                  \
    template struct LatticeState<T>;                                                           \
    template std::size_t default_lax_size(const LatticeState<T>&);                             \
    template BandMatrix<T> build_l1(const LatticeState<T>&, std::size_t);                      \
    template BandMatrix<T> build_a1(const LatticeState<T>&, std::size_t);                      \
    template BandMatrix<T> build_l2(const LatticeState<T>&, std::size_t);                      \
    template BandMatrix<T> build_a2(const LatticeState<T>&, std::size_t);                      \
    template std::pair<BandMatrix<T>, BandMatrix<T>> lax_pair(const LatticeState<T>&, std::size_t); \
    template T lax_residual(const LatticeState<T>&, const BandMatrix<T>&, const BandMatrix<T>&); \
    template T lax_residual(const LatticeState<T>&);

BOGOLAT_INSTANTIATE(Rational)
BOGOLAT_INSTANTIATE(double)
#undef BOGOLAT_INSTANTIATE

template struct LatticeState<long double>;
template std::vector<Rational> lattice_rhs(Family, int, std::span<const Rational>);
template std::vector<double> lattice_rhs(Family, int, std::span<const double>);
template std::vector<long double> lattice_rhs(Family, int, std::span<const long double>);

}  // namespace bogolat
