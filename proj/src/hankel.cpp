#include "bogolat/hankel.hpp"

#include <cmath>
#include <string>
#include <utility>

namespace bogolat {

int alpha_depth(int r, int q, int k) {
    return k / r + k / q;
}

template <class T>
const T& alpha(const MomentTable<T>& table, int i, int j) {
    if (i < 0 || j < 0) fail(ErrorKind::InvalidArgument, "alpha: negative index");
    const int r = table.r();
    const int q = table.q();
    return table(i / r + j / q, i % r + 1, j % q + 1);
}

template <class T>
DenseMatrix<T> hankel_section(const MomentTable<T>& table, int k) {
    if (alpha_depth(table.r(), table.q(), k) > table.max_index())
        fail(ErrorKind::IndexBeyondTable, "H_" + std::to_string(k) + " needs moments up to index " +
                                              std::to_string(alpha_depth(table.r(), table.q(), k)),
             alpha_depth(table.r(), table.q(), k));
    const std::size_t n = static_cast<std::size_t>(k + 1);
    DenseMatrix<T> h(n, n);
    for (int i = 0; i <= k; ++i)
        for (int j = 0; j <= k; ++j) h(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) = alpha(table, i, j);
    return h;
}

namespace {

// Fraction-free elimination: after step s every entry of the trailing block
// is a minor of the original matrix, so the divisions are exact.
Rational bareiss(DenseMatrix<Rational> a) {
    const std::size_t n = a.rows();
    if (n == 0) return Rational(1);
    Rational sign(1);
    Rational prev(1);
    for (std::size_t s = 0; s + 1 < n; ++s) {
        if (a(s, s) == 0) {
            std::size_t swap = s + 1;
            while (swap < n && a(swap, s) == 0) ++swap;
            if (swap == n) return Rational(0);
            for (std::size_t j = 0; j < n; ++j) std::swap(a(s, j), a(swap, j));
            sign = -sign;
        }
        for (std::size_t i = s + 1; i < n; ++i) {
            for (std::size_t j = s + 1; j < n; ++j) a(i, j) = (a(i, j) * a(s, s) - a(i, s) * a(s, j)) / prev;
            a(i, s) = 0;
        }
        prev = a(s, s);
    }
    return sign * a(n - 1, n - 1);
}

// Returns the determinant and the smallest pivot magnitude seen.
template <class F>
std::pair<F, F> lu_determinant(DenseMatrix<F> a) {
    const std::size_t n = a.rows();
    F det(1);
    F min_pivot = n ? INFINITY : F(0);
    for (std::size_t s = 0; s < n; ++s) {
        std::size_t piv = s;
        for (std::size_t i = s + 1; i < n; ++i)
            if (std::fabs(a(i, s)) > std::fabs(a(piv, s))) piv = i;
        if (piv != s) {
            for (std::size_t j = 0; j < n; ++j) std::swap(a(s, j), a(piv, j));
            det = -det;
        }
        const F pivot = a(s, s);
        min_pivot = std::min(min_pivot, F(std::fabs(pivot)));
        det *= pivot;
        if (pivot == F(0)) return {F(0), F(0)};
        for (std::size_t i = s + 1; i < n; ++i) {
            const F f = a(i, s) / pivot;
            if (f == F(0)) continue;
            for (std::size_t j = s + 1; j < n; ++j) a(i, j) -= f * a(s, j);
        }
    }
    return {det, min_pivot};
}

}  // namespace

template <>
Rational determinant(const DenseMatrix<Rational>& m) {
    if (m.rows() != m.cols()) fail(ErrorKind::DimensionMismatch, "determinant: matrix is not square");
    return bareiss(m);
}

template <>
double determinant(const DenseMatrix<double>& m) {
    if (m.rows() != m.cols()) fail(ErrorKind::DimensionMismatch, "determinant: matrix is not square");
    return lu_determinant(m).first;
}

double checked_determinant(const DenseMatrix<double>& m, double rel_tol) {
    if (m.rows() != m.cols()) fail(ErrorKind::DimensionMismatch, "determinant: matrix is not square");
    const auto [det, min_pivot] = lu_determinant(m);
    const double scale = max_abs(m);
    if (!(min_pivot > rel_tol * scale) || !std::isfinite(det))
        fail(ErrorKind::NearSingular, "determinant: pivot " + to_string(min_pivot) + " below " + to_string(rel_tol) +
                                          " x " + to_string(scale));
    return det;
}

template <class T>
DeterminantLadder<T> delta_ladder(const MomentTable<T>& table, int max_k) {
    if (max_k < 0) return DeterminantLadder<T>{};
    std::vector<T> values;
    values.reserve(static_cast<std::size_t>(max_k + 1));
    for (int k = 0; k <= max_k; ++k) {
        const DenseMatrix<T> h = hankel_section(table, k);
        if constexpr (is_exact_v<T>) {
            T d = determinant(h);
            if (d == 0) fail(ErrorKind::DegenerateMoments, "Delta_" + std::to_string(k) + " vanishes", k);
            values.push_back(std::move(d));
        } else {
            try {
                values.push_back(checked_determinant(h));
            } catch (const Error& e) {
                fail(ErrorKind::NearSingular, "Delta_" + std::to_string(k) + ": " + e.what(), k);
            }
        }
    }
    return DeterminantLadder<T>(std::move(values));
}

template <class T>
std::vector<T> leading_minors(const MomentTable<T>& table, int max_k) {
    std::vector<T> out;
    for (int k = 0; k <= max_k; ++k) out.push_back(determinant(hankel_section(table, k)));
    return out;
}

namespace {

template <class T>
T power(const T& x, int e) {
    T out(1);
    for (int i = 0; i < e; ++i) out *= x;
    return out;
}

template <class T>
T read_or_zero(std::span<const T> c, int i) {
    return i < static_cast<int>(c.size()) ? c[static_cast<std::size_t>(i)] : T(0);
}

}  // namespace

template <class T>
T delta_closed_form_l1(std::span<const T> a, int k) {
    T out(1);
    for (int j = 1; j <= k; ++j) out *= power(read_or_zero(a, k - j), j);
    return out;
}

template <class T>
T delta_closed_form_l2(std::span<const T> c, int k, int q) {
    if (q < 1) fail(ErrorKind::InvalidArgument, "delta_closed_form_l2: q must be positive");
    if (k < q) return T(1);
    const int i = k - q;
    const int h = (i + q) / q;
    T out(1);
    for (int layer = 1; layer <= h; ++layer) {
        T block(1);
        const int top = i - (layer - 1) * q;
        for (int j = top; j > top - q && j >= 0; --j) block *= read_or_zero(c, j);
        out *= power(block, layer);
    }
    return out;
}

template <class T>
T delta_transport_product(std::span<const T> b, int k, int p) {
    if (p < 1) fail(ErrorKind::InvalidArgument, "delta_transport_product: p must be positive");
    if (k < p) return T(1);
    const int h = k / p;
    const int h1 = k % p;
    T out(1);
    for (int v = 1; v <= h - 1; ++v) {
        T block(1);
        for (int j = k - v * p; j >= k - (v + 1) * p + 1; --j) block *= read_or_zero(b, j);
        out *= power(block, v);
    }
    T tail(1);
    for (int j = h1; j >= 0; --j) tail *= read_or_zero(b, j);
    return out * power(tail, h);
}

template <class T>
std::vector<T> reconstruct_subdiagonal(const MomentTable<T>& table, int count) {
    if (count < 0) fail(ErrorKind::InvalidArgument, "reconstruct_subdiagonal: negative count");
    const int q = table.q();
    const DeterminantLadder<T> d = delta_ladder(table, count - 1 + q);
    std::vector<T> out;
    out.reserve(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) out.push_back(d[i + q] * d[i - 1] / (d[i + q - 1] * d[i]));
    return out;
}

template <class T>
LatticeState<T> reconstruct_sparse_lattice(const MomentTable<T>& table, SparsityKind kind, int count) {
    if (kind == SparsityKind::General)
        fail(ErrorKind::InvalidArgument, "reconstruct_sparse_lattice: only L1-type and L2-type tables are supported");
    const auto norm = check_normalization(table);
    if (!norm.empty())
        fail(ErrorKind::DegenerateMoments,
             "normalization fails at S_" + std::to_string(norm.front().k) + "^{" + std::to_string(norm.front().m) + "," +
                 std::to_string(norm.front().n) + "}",
             norm.front().k);
    const auto off = check_sparsity(table, kind);
    if (!off.empty())
        fail(ErrorKind::SparsityViolated,
             "nonzero off-pattern moment S_" + std::to_string(off.front().k) + "^{" + std::to_string(off.front().m) + "," +
                 std::to_string(off.front().n) + "}",
             off.front().k);
    LatticeState<T> state;
    state.family = kind == SparsityKind::L1Type ? Family::Product : Family::Sum;
    state.order = kind == SparsityKind::L1Type ? table.r() : table.q();
    state.coeffs = reconstruct_subdiagonal(table, count);
    return state;
}

#define BOGOLAT_INSTANTIATE(T)                                                                  \
    template const T& alpha(const MomentTable<T>&, int, int);                                   \
    template DenseMatrix<T> hankel_section(const MomentTable<T>&, int);                         \
    template DeterminantLadder<T> delta_ladder(const MomentTable<T>&, int);                     \
    template std::vector<T> leading_minors(const MomentTable<T>&, int);                         \
    template T delta_closed_form_l1(std::span<const T>, int);                                   \
    template T delta_closed_form_l2(std::span<const T>, int, int);                              \
    template T delta_transport_product(std::span<const T>, int, int);                           \
    template std::vector<T> reconstruct_subdiagonal(const MomentTable<T>&, int);                \
    template LatticeState<T> reconstruct_sparse_lattice(const MomentTable<T>&, SparsityKind, int);

BOGOLAT_INSTANTIATE(Rational)
BOGOLAT_INSTANTIATE(double)

#undef BOGOLAT_INSTANTIATE

}  // namespace bogolat
