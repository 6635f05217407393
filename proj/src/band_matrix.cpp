#include "bogolat/band_matrix.hpp"

#include <cmath>
#include <limits>

namespace bogolat {

std::vector<double> solve_banded(const BandMatrix<double>& m, std::span<const double> rhs) {
    const std::size_t n = m.size();
    if (rhs.size() != n) fail(ErrorKind::DimensionMismatch, "solve_banded: right-hand side length differs");
    const std::size_t kl = m.lower();
    const std::size_t ku = m.upper();
    const std::size_t width = 2 * kl + ku + 1;

    // Row i holds columns i-kl .. i+kl+ku; the extra kl slots absorb fill-in
    // from row interchanges.
    std::vector<double> work(n * width, 0.0);
    auto slot = [&](std::size_t i, std::size_t j) -> double* {
        if (j + kl < i || j > i + kl + ku) return nullptr;
        return &work[i * width + (j + kl - i)];
    };
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = (i > kl ? i - kl : 0); j < n && j <= i + ku; ++j) *slot(i, j) = m.at(i, j);

    std::vector<double> b(rhs.begin(), rhs.end());
    const double scale = m.row_sum_norm();
    const double tiny = 64.0 * std::numeric_limits<double>::epsilon() * (scale > 0 ? scale : 1.0);

    for (std::size_t k = 0; k < n; ++k) {
        const std::size_t last_row = std::min(n - 1, k + kl);
        const std::size_t last_col = std::min(n - 1, k + kl + ku);
        std::size_t pivot = k;
        double best = std::fabs(*slot(k, k));
        for (std::size_t i = k + 1; i <= last_row; ++i) {
            const double v = std::fabs(*slot(i, k));
            if (v > best) {
                best = v;
                pivot = i;
            }
        }
        if (!(best > tiny)) fail(ErrorKind::SingularShift, "solve_banded: matrix is numerically singular", static_cast<std::ptrdiff_t>(k));
        if (pivot != k) {
            for (std::size_t j = k; j <= last_col; ++j) {
                double* a = slot(k, j);
                double* c = slot(pivot, j);
                const double va = a ? *a : 0.0;
                const double vc = c ? *c : 0.0;
                if (a) *a = vc;
                if (c) *c = va;
            }
            std::swap(b[k], b[pivot]);
        }
        const double diag = *slot(k, k);
        for (std::size_t i = k + 1; i <= last_row; ++i) {
            double* lik = slot(i, k);
            if (*lik == 0.0) continue;
            const double factor = *lik / diag;
            *lik = 0.0;
            for (std::size_t j = k + 1; j <= last_col; ++j) {
                const double* ukj = slot(k, j);
                if (!ukj || *ukj == 0.0) continue;
                *slot(i, j) -= factor * *ukj;
            }
            b[i] -= factor * b[k];
        }
    }

    std::vector<double> x(n, 0.0);
    for (std::size_t k = n; k-- > 0;) {
        double s = b[k];
        const std::size_t last_col = std::min(n - 1, k + kl + ku);
        for (std::size_t j = k + 1; j <= last_col; ++j) s -= *slot(k, j) * x[j];
        x[k] = s / *slot(k, k);
    }
    return x;
}

}  // namespace bogolat
