#ifndef BOGOLAT_TESTS_SUPPORT_HPP_
#define BOGOLAT_TESTS_SUPPORT_HPP_

// Seeded generators and reference computations shared by the unit and
// acceptance tests. The references avoid the library's own kernels: dense
// matrix powers instead of band iteration, plain fraction Gaussian
// elimination instead of Bareiss, and the lattice equations written out
// term by term.

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "bogolat/band_matrix.hpp"
#include "bogolat/lattice.hpp"
#include "bogolat/scalar.hpp"

namespace testing_support {

using bogolat::DenseMatrix;
using bogolat::Family;
using bogolat::LatticeState;
using bogolat::Rational;
using Rng = std::mt19937_64;

inline int pick(Rng& rng, int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(rng);
}

inline double uniform(Rng& rng, double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng);
}

/// Nonzero p/q with |p| <= 12 and 1 <= q <= 5.
inline Rational small_rational(Rng& rng, bool allow_negative = true) {
    Rational x(pick(rng, 1, 12), pick(rng, 1, 5));
    if (allow_negative && pick(rng, 0, 2) == 0) x = -x;
    return x;
}

template <class T>
T from_rational(const Rational& x) {
    if constexpr (bogolat::is_exact_v<T>) return x;
    else return static_cast<T>(x.convert_to<double>());
}

template <class T>
LatticeState<T> random_lattice(Rng& rng, Family family, int order, int count, bool allow_negative = true) {
    LatticeState<T> s;
    s.family = family;
    s.order = order;
    for (int i = 0; i < count; ++i) s.coeffs.push_back(from_rational<T>(small_rational(rng, allow_negative)));
    return s;
}

/// Positive doubles in [lo, hi].
inline LatticeState<double> random_positive_lattice(Rng& rng, Family family, int order, int count, double lo = 0.5,
                                                    double hi = 2.0) {
    LatticeState<double> s;
    s.family = family;
    s.order = order;
    for (int i = 0; i < count; ++i) s.coeffs.push_back(uniform(rng, lo, hi));
    return s;
}

template <class T>
DenseMatrix<T> dense_power(const DenseMatrix<T>& m, int k) {
    DenseMatrix<T> out = DenseMatrix<T>::identity(m.rows());
    for (int i = 0; i < k; ++i) out = out * m;
    return out;
}

/// Determinant by Gaussian elimination over the rationals (first nonzero
/// pivot in each column).
inline Rational det_reference(DenseMatrix<Rational> a) {
    const std::size_t n = a.rows();
    Rational det(1);
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t piv = c;
        while (piv < n && a(piv, c) == 0) ++piv;
        if (piv == n) return Rational(0);
        if (piv != c) {
            for (std::size_t j = 0; j < n; ++j) std::swap(a(piv, j), a(c, j));
            det = -det;
        }
        det *= a(c, c);
        for (std::size_t i = c + 1; i < n; ++i) {
            const Rational f = a(i, c) / a(c, c);
            if (f == 0) continue;
            for (std::size_t j = c; j < n; ++j) a(i, j) -= f * a(c, j);
        }
    }
    return det;
}

/// Solves a x = b by Gaussian elimination with partial pivoting.
inline std::vector<double> dense_solve_reference(DenseMatrix<double> a, std::vector<double> b) {
    const std::size_t n = a.rows();
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t piv = c;
        for (std::size_t i = c + 1; i < n; ++i)
            if (std::fabs(a(i, c)) > std::fabs(a(piv, c))) piv = i;
        for (std::size_t j = 0; j < n; ++j) std::swap(a(piv, j), a(c, j));
        std::swap(b[piv], b[c]);
        for (std::size_t i = c + 1; i < n; ++i) {
            const double f = a(i, c) / a(c, c);
            for (std::size_t j = c; j < n; ++j) a(i, j) -= f * a(c, j);
            b[i] -= f * b[c];
        }
    }
    std::vector<double> x(n);
    for (std::size_t i = n; i-- > 0;) {
        double s = b[i];
        for (std::size_t j = i + 1; j < n; ++j) s -= a(i, j) * x[j];
        x[i] = s / a(i, i);
    }
    return x;
}

/// Lattice equations with zero padding, written out directly.
template <class T>
std::vector<T> rhs_reference(Family family, int p, const std::vector<T>& x) {
    const long n = static_cast<long>(x.size());
    auto at = [&](long i) { return (i < 0 || i >= n) ? T(0) : x[static_cast<std::size_t>(i)]; };
    std::vector<T> out(x.size());
    for (long i = 0; i < n; ++i) {
        T fwd = family == Family::Product ? T(1) : T(0);
        T bwd = fwd;
        for (long j = 1; j <= p; ++j) {
            if (family == Family::Product) {
                fwd *= at(i + j);
                bwd *= at(i - j);
            } else {
                fwd += at(i + j);
                bwd += at(i - j);
            }
        }
        out[static_cast<std::size_t>(i)] = x[static_cast<std::size_t>(i)] * (fwd - bwd);
    }
    return out;
}

/// Dense L1: ones at (i, i+p), a_i at (i+1, i); size defaults to count+1.
template <class T>
DenseMatrix<T> dense_l1(const std::vector<T>& a, int p, std::size_t size = 0) {
    if (!size) size = a.size() + 1;
    DenseMatrix<T> m(size, size);
    for (std::size_t i = 0; i + static_cast<std::size_t>(p) < size; ++i) m(i, i + p) = T(1);
    for (std::size_t i = 0; i < a.size() && i + 1 < size; ++i) m(i + 1, i) = a[i];
    return m;
}

/// Dense L2: ones at (i, i+1), b_i at (i+p, i); size defaults to count+p.
template <class T>
DenseMatrix<T> dense_l2(const std::vector<T>& b, int p, std::size_t size = 0) {
    if (!size) size = b.size() + static_cast<std::size_t>(p);
    DenseMatrix<T> m(size, size);
    for (std::size_t i = 0; i + 1 < size; ++i) m(i, i + 1) = T(1);
    for (std::size_t i = 0; i < b.size() && i + p < size; ++i) m(i + p, i) = b[i];
    return m;
}

/// Classical RK4 on the reference right-hand side, returning the state at
/// every step.
template <class F>
std::vector<std::vector<F>> rk4_reference(Family family, int p, std::vector<F> y, F dt, long steps) {
    std::vector<std::vector<F>> out{y};
    auto axpy = [](const std::vector<F>& a, const std::vector<F>& b, F s) {
        std::vector<F> r(a.size());
        for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + s * b[i];
        return r;
    };
    for (long s = 0; s < steps; ++s) {
        const auto k1 = rhs_reference(family, p, y);
        const auto k2 = rhs_reference(family, p, axpy(y, k1, dt / 2));
        const auto k3 = rhs_reference(family, p, axpy(y, k2, dt / 2));
        const auto k4 = rhs_reference(family, p, axpy(y, k3, dt));
        for (std::size_t i = 0; i < y.size(); ++i) y[i] += dt / 6 * (k1[i] + 2 * k2[i] + 2 * k3[i] + k4[i]);
        out.push_back(y);
    }
    return out;
}

}  // namespace testing_support

#endif  // BOGOLAT_TESTS_SUPPORT_HPP_
