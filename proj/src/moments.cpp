#include "bogolat/moments.hpp"

#include <algorithm>
#include <cmath>

namespace bogolat {

std::size_t required_window(int r, int q, int max_index) {
    if (r < 1 || q < 1 || max_index < 0) fail(ErrorKind::InvalidArgument, "required_window: invalid shape");
    const long long num = static_cast<long long>(max_index) * q * r + 2LL * q * r - q - r;
    const long long deepest = num / (q + r);
    return static_cast<std::size_t>(std::max<long long>({deepest + 1, r, q}));
}

template <class T>
MomentTable<T> compute_moments(const BandMatrix<T>& m, int max_index, TruncationPolicy policy) {
    const int r = static_cast<int>(m.upper());
    const int q = static_cast<int>(m.lower());
    if (r < 1 || q < 1) fail(ErrorKind::InvalidArgument, "compute_moments: band operator needs r >= 1 and q >= 1");
    const std::size_t n = m.size();
    if (n < static_cast<std::size_t>(std::max(r, q)))
        fail(ErrorKind::DimensionMismatch, "compute_moments: matrix smaller than the Weyl matrix shape");
    if (policy == TruncationPolicy::SemiInfiniteWindow && n < required_window(r, q, max_index))
        fail(ErrorKind::WindowTooSmall,
             "compute_moments: section of size " + std::to_string(n) + " cannot represent moments up to index " +
                 std::to_string(max_index) + " (need " + std::to_string(required_window(r, q, max_index)) + ")",
             static_cast<std::ptrdiff_t>(n));

    MomentTable<T> table(r, q, max_index, MomentSource::FromMatrix);
    for (int col = 1; col <= q; ++col) {
        std::vector<T> v(n, T(0));
        v[static_cast<std::size_t>(col - 1)] = T(1);
        for (int k = 0; k <= max_index; ++k) {
            for (int row = 1; row <= r; ++row) table(k, row, col) = v[static_cast<std::size_t>(row - 1)];
            if (k < max_index) v = m.apply(v);
        }
    }
    return table;
}

template <class T>
std::vector<MomentIndex> check_normalization(const MomentTable<T>& table) {
    std::vector<MomentIndex> bad;
    const int r = table.r();
    const int q = table.q();
    for (int l = 0; l <= q / r && l <= table.max_index(); ++l)
        for (int m = 1; m <= r; ++m)
            for (int n = l * r + 1; n <= q; ++n) {
                const T expected = (m + l * r == n) ? T(1) : T(0);
                if (table(l, m, n) != expected) bad.push_back({l, m, n});
            }
    return bad;
}

namespace {

bool on_sparse_pattern(int k, int m, int n, int r, int q) {
    const long long num = static_cast<long long>(k) * q - (m - n);
    if (num < 0 || num % (q + r) != 0) return false;
    return num / (q + r) <= k;
}

}  // namespace

template <class T>
std::vector<MomentIndex> check_sparsity(const MomentTable<T>& table, SparsityKind kind) {
    const int r = table.r();
    const int q = table.q();
    if (kind == SparsityKind::L1Type && q != 1)
        fail(ErrorKind::InvalidArgument, "check_sparsity: L1-type tables have a single column (q = 1)");
    if (kind == SparsityKind::L2Type && r != 1)
        fail(ErrorKind::InvalidArgument, "check_sparsity: L2-type tables have a single row (r = 1)");
    std::vector<MomentIndex> bad;
    for (int k = 0; k <= table.max_index(); ++k)
        for (int m = 1; m <= r; ++m)
            for (int n = 1; n <= q; ++n) {
                bool allowed = false;
                switch (kind) {
                    case SparsityKind::L1Type: allowed = (k - (m - 1)) % (r + 1) == 0 && k >= m - 1; break;
                    case SparsityKind::L2Type: allowed = (k - (n - 1)) % (q + 1) == 0 && k >= n - 1; break;
                    case SparsityKind::General: allowed = on_sparse_pattern(k, m, n, r, q); break;
                }
                if (!allowed && !ScalarTraits<T>::is_zero(table(k, m, n))) bad.push_back({k, m, n});
            }
    return bad;
}

double weyl_entry(const BandMatrix<double>& m, double lambda, int row, int col) {
    const std::size_t n = m.size();
    if (row < 1 || col < 1 || static_cast<std::size_t>(row) > n || static_cast<std::size_t>(col) > n)
        fail(ErrorKind::InvalidArgument, "weyl_entry: index outside the matrix");
    const double norm = m.row_sum_norm();
    if (!(std::fabs(lambda) > norm))
        fail(ErrorKind::LambdaInsideBound, "weyl_entry: |lambda| must exceed the row-sum norm " + to_string(norm));
    BandMatrix<double> shifted(n, m.lower(), m.upper());
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = (i > m.lower() ? i - m.lower() : 0); j < n && j <= i + m.upper(); ++j)
            shifted.set(i, j, (i == j ? lambda : 0.0) - m.at(i, j));
    std::vector<double> rhs(n, 0.0);
    rhs[static_cast<std::size_t>(col - 1)] = 1.0;
    return solve_banded(shifted, rhs)[static_cast<std::size_t>(row - 1)];
}

double neumann_partial_sum(const MomentTable<double>& table, double lambda, int row, int col, int terms_max_index) {
    if (terms_max_index > table.max_index())
        fail(ErrorKind::IndexBeyondTable, "neumann_partial_sum: not enough moments", terms_max_index);
    // Horner in 1/lambda: sum_k S_k / lambda^{k+1}
    double acc = 0.0;
    for (int k = terms_max_index; k >= 0; --k) acc = (acc + table(k, row, col)) / lambda;
    return acc;
}

double neumann_tail_bound(double norm, double lambda, int terms_max_index) {
    const double mod = std::fabs(lambda);
    if (!(mod > norm)) return INFINITY;
    return std::pow(norm / mod, terms_max_index + 1) / (mod - norm);
}

template MomentTable<Rational> compute_moments(const BandMatrix<Rational>&, int, TruncationPolicy);
template MomentTable<double> compute_moments(const BandMatrix<double>&, int, TruncationPolicy);
template std::vector<MomentIndex> check_normalization(const MomentTable<Rational>&);
template std::vector<MomentIndex> check_normalization(const MomentTable<double>&);
template std::vector<MomentIndex> check_sparsity(const MomentTable<Rational>&, SparsityKind);
template std::vector<MomentIndex> check_sparsity(const MomentTable<double>&, SparsityKind);

}  // namespace bogolat
