#include "bogolat/invariants.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "bogolat/hankel.hpp"
#include "bogolat/miura.hpp"

namespace bogolat {

std::string_view to_string(FrcKind kind) {
    switch (kind) {
        case FrcKind::C: return "C";
        case FrcKind::D: return "D";
        case FrcKind::CTilde: return "C_tilde";
        case FrcKind::DTilde: return "D_tilde";
    }
    return "?";
}

FrcKind frc_kind_from_string(std::string_view name) {
    if (name == "C") return FrcKind::C;
    if (name == "D") return FrcKind::D;
    if (name == "C_tilde" || name == "Ct") return FrcKind::CTilde;
    if (name == "D_tilde" || name == "Dt") return FrcKind::DTilde;
    fail(ErrorKind::InvalidArgument, "unknown FRC kind '" + std::string(name) + "'");
}

namespace {

bool is_tilde(FrcKind kind) {
    return kind == FrcKind::CTilde || kind == FrcKind::DTilde;
}

bool column_recurrence(FrcKind kind) {
    return kind == FrcKind::C || kind == FrcKind::DTilde;
}

struct FrcShape {
    int r;
    int q;
    int rank;
};

FrcShape frc_shape(FrcKind kind, int n, int p) {
    if (n < 0 || p < 1) fail(ErrorKind::InvalidArgument, "FRC: need N >= 0 and p >= 1");
    return is_tilde(kind) ? FrcShape{1, p, n + p + 1} : FrcShape{p, 1, n + 2};
}

// Gaussian elimination with partial pivoting; exact for rationals.
template <class T>
std::vector<T> solve_square(DenseMatrix<T> a, std::vector<T> b) {
    const std::size_t n = a.rows();
    const T scale = max_abs(a);
    for (std::size_t s = 0; s < n; ++s) {
        std::size_t piv = s;
        for (std::size_t i = s + 1; i < n; ++i)
            if (scalar_abs(a(i, s)) > scalar_abs(a(piv, s))) piv = i;
        bool singular = ScalarTraits<T>::is_zero(a(piv, s));
        if constexpr (!is_exact_v<T>) singular = singular || std::fabs(a(piv, s)) <= 1e-13 * scale;
        if (singular) fail(ErrorKind::RankDeficient, "FRC system is singular (rank condition fails)", static_cast<std::ptrdiff_t>(s));
        if (piv != s) {
            for (std::size_t j = 0; j < n; ++j) std::swap(a(s, j), a(piv, j));
            std::swap(b[s], b[piv]);
        }
        for (std::size_t i = s + 1; i < n; ++i) {
            if (ScalarTraits<T>::is_zero(a(i, s))) continue;
            const T f = a(i, s) / a(s, s);
            for (std::size_t j = s; j < n; ++j) a(i, j) -= f * a(s, j);
            b[i] -= f * b[s];
        }
    }
    std::vector<T> x(n, T(0));
    for (std::size_t ii = n; ii-- > 0;) {
        T acc = b[ii];
        for (std::size_t j = ii + 1; j < n; ++j) acc -= a(ii, j) * x[j];
        x[ii] = acc / a(ii, ii);
    }
    return x;
}

// Shifting a column recurrence by one column is a structural identity only
// when q = 1; in general alpha_{i, j+q} = alpha_{i+r, j} carries it q
// columns ahead. Rows behave the same way with r.
int frc_stride(FrcKind kind, const FrcShape& s) {
    return column_recurrence(kind) ? s.q : s.r;
}

}  // namespace

int frc_table_depth(FrcKind kind, int n, int p, int extra) {
    const FrcShape s = frc_shape(kind, n, p);
    const int far = s.rank + frc_stride(kind, s) * std::max(extra, 0);
    const int near = s.rank - 1;
    return column_recurrence(kind) ? near / s.r + far / s.q : far / s.r + near / s.q;
}

template <class T>
FrcSet<T> compute_frc(const MomentTable<T>& table, FrcKind kind, int n) {
    const int p = is_tilde(kind) ? table.q() : table.r();
    const FrcShape s = frc_shape(kind, n, p);
    if (table.r() != s.r || table.q() != s.q)
        fail(ErrorKind::InvalidArgument, std::string("compute_frc: ") + std::string(to_string(kind)) +
                                             (is_tilde(kind) ? " needs an L2-type table" : " needs an L1-type table"));
    const int depth = frc_table_depth(kind, n, p);
    if (depth > table.max_index()) fail(ErrorKind::IndexBeyondTable, "compute_frc: table too shallow", depth);
    const int rank = s.rank;
    const std::size_t sz = static_cast<std::size_t>(rank);
    DenseMatrix<T> a(sz, sz);
    std::vector<T> rhs(sz);
    for (int e = 0; e < rank; ++e) {
        const auto eu = static_cast<std::size_t>(e);
        for (int v = 0; v < rank; ++v) {
            const auto vu = static_cast<std::size_t>(v);
            a(eu, vu) = column_recurrence(kind) ? alpha(table, e, rank - 1 - v) : alpha(table, rank - 1 - v, e);
        }
        rhs[eu] = column_recurrence(kind) ? alpha(table, e, rank) : alpha(table, rank, e);
    }
    FrcSet<T> out;
    out.kind = kind;
    out.n = n;
    out.p = p;
    out.values = solve_square(a, rhs);
    if constexpr (!is_exact_v<T>) {
        double worst = 0.0;
        for (std::size_t i = 0; i < sz; ++i) {
            T acc = -rhs[i];
            for (std::size_t j = 0; j < sz; ++j) acc += a(i, j) * out.values[j];
            worst = std::max(worst, std::fabs(to_double(acc)));
        }
        out.residual = worst;
    }
    return out;
}

template <class T>
std::vector<HankelPosition> frc_recurrence_violations(const MomentTable<T>& table, const FrcSet<T>& frc, int extra) {
    const FrcShape s = frc_shape(frc.kind, frc.n, frc.p);
    const int depth = frc_table_depth(frc.kind, frc.n, frc.p, extra);
    if (depth > table.max_index()) fail(ErrorKind::IndexBeyondTable, "frc_recurrence_violations: table too shallow", depth);
    const int rank = s.rank;
    std::vector<HankelPosition> bad;
    const int stride = frc_stride(frc.kind, s);
    for (int far = rank; far <= rank + stride * extra; far += stride)
        for (int near = 0; near < rank; ++near) {
            const bool col = column_recurrence(frc.kind);
            const T& lhs = col ? alpha(table, near, far) : alpha(table, far, near);
            T sum(0);
            T mag(0);
            for (int v = 0; v < rank; ++v) {
                const T term = frc.values[static_cast<std::size_t>(v)] *
                               (col ? alpha(table, near, far - v - 1) : alpha(table, far - v - 1, near));
                sum += term;
                mag += scalar_abs(term);
            }
            bool ok;
            if constexpr (is_exact_v<T>) {
                ok = lhs == sum;
            } else {
                ok = std::fabs(lhs - sum) <= 1e-9 * std::max({std::fabs(lhs), mag, 1.0});
            }
            if (!ok) bad.push_back(col ? HankelPosition{near, far} : HankelPosition{far, near});
        }
    return bad;
}

CharPoly<Rational> charpoly_faddeev_leverrier(const DenseMatrix<Rational>& m) {
    const std::size_t n = m.rows();
    if (m.cols() != n) fail(ErrorKind::DimensionMismatch, "charpoly: matrix is not square");
    CharPoly<Rational> out;
    out.degree = static_cast<int>(n);
    // M_1 = I; c_{k-1} = -tr(A M_k) / k; M_{k+1} = A M_k + c_{k-1} I
    DenseMatrix<Rational> mk = DenseMatrix<Rational>::identity(n);
    for (std::size_t k = 1; k <= n; ++k) {
        DenseMatrix<Rational> am = m * mk;
        Rational trace(0);
        for (std::size_t i = 0; i < n; ++i) trace += am(i, i);
        const Rational c = -trace / Rational(static_cast<long>(k));
        out.coeffs.push_back(c);
        for (std::size_t i = 0; i < n; ++i) am(i, i) += c;
        mk = std::move(am);
    }
    return out;
}

CharPoly<double> charpoly_hessenberg(const DenseMatrix<double>& m) {
    const std::size_t n = m.rows();
    if (m.cols() != n) fail(ErrorKind::DimensionMismatch, "charpoly: matrix is not square");
    DenseMatrix<double> h = m;
    // similarity reduction to upper Hessenberg form by stabilized elimination
    for (std::size_t col = 0; col + 2 < n; ++col) {
        std::size_t piv = col + 1;
        for (std::size_t i = col + 2; i < n; ++i)
            if (std::fabs(h(i, col)) > std::fabs(h(piv, col))) piv = i;
        if (h(piv, col) == 0.0) continue;
        if (piv != col + 1) {
            for (std::size_t j = 0; j < n; ++j) std::swap(h(piv, j), h(col + 1, j));
            for (std::size_t i = 0; i < n; ++i) std::swap(h(i, piv), h(i, col + 1));
        }
        for (std::size_t i = col + 2; i < n; ++i) {
            const double u = h(i, col) / h(col + 1, col);
            if (u == 0.0) continue;
            for (std::size_t j = 0; j < n; ++j) h(i, j) -= u * h(col + 1, j);
            for (std::size_t r = 0; r < n; ++r) h(r, col + 1) += u * h(r, i);
        }
    }
    // p_k(x) = (x - h_kk) p_{k-1}(x) - sum_i h_{k-i,k} (h_{k,k-1} ... h_{k-i+1,k-i}) p_{k-i-1}(x)
    std::vector<std::vector<double>> polys(n + 1);
    polys[0] = {1.0};  // coefficients by ascending power
    for (std::size_t k = 1; k <= n; ++k) {
        std::vector<double> pk(k + 1, 0.0);
        const auto& prev = polys[k - 1];
        for (std::size_t d = 0; d < prev.size(); ++d) {
            pk[d + 1] += prev[d];
            pk[d] -= h(k - 1, k - 1) * prev[d];
        }
        double t = 1.0;
        for (std::size_t i = 1; i < k; ++i) {
            t *= h(k - i, k - i - 1);
            const double f = t * h(k - i - 1, k - 1);
            if (f == 0.0) continue;
            const auto& older = polys[k - i - 1];
            for (std::size_t d = 0; d < older.size(); ++d) pk[d] -= f * older[d];
        }
        polys[k] = std::move(pk);
    }
    CharPoly<double> out;
    out.degree = static_cast<int>(n);
    for (std::size_t k = 1; k <= n; ++k) out.coeffs.push_back(polys[n][n - k]);
    return out;
}

template <class T>
CharPoly<T> charpoly(const BandMatrix<T>& m) {
    if constexpr (is_exact_v<T>) {
        return charpoly_faddeev_leverrier(m.to_dense());
    } else {
        return charpoly_hessenberg(m.to_dense());
    }
}

template <class T>
T cayley_hamilton_residual(const DenseMatrix<T>& m, const CharPoly<T>& poly) {
    const std::size_t n = m.rows();
    // Horner: P(M) = (...((M + c_0 I) M + c_1 I) M ...) + c_{deg-1} I
    DenseMatrix<T> acc = DenseMatrix<T>::identity(n);
    for (const T& c : poly.coeffs) {
        acc = acc * m;
        for (std::size_t i = 0; i < n; ++i) acc(i, i) += c;
    }
    return max_abs(acc);
}

MinimalityReport minimal_rank_check(const MomentTable<Rational>& table, int n) {
    const int q = table.q();
    const int rank = n + q + 1;
    MinimalityReport out;
    out.delta_rank_minus_one = determinant(hankel_section(table, rank - 1));
    out.delta_rank = determinant(hankel_section(table, rank));
    out.ok = out.delta_rank_minus_one != 0 && out.delta_rank == 0;
    return out;
}

template <class F>
std::vector<MonitorResult> monitor_integrals(const Trajectory<F>& traj, const std::vector<IntegralMonitor<F>>& monitors) {
    std::vector<MonitorResult> out;
    const std::vector<F> none;
    for (const auto& mon : monitors) {
        if (mon.needs_integrals && !traj.has_integrals())
            fail(ErrorKind::MissingAccumulators, "monitor " + mon.name + " needs co-integrated coefficient integrals");
        MonitorResult res;
        res.name = mon.name;
        for (std::size_t s = 0; s < traj.samples(); ++s) {
            const F v = mon.evaluate(traj.values[s], traj.has_integrals() ? traj.integrals[s] : none, traj.times[s]);
            res.values.push_back(static_cast<double>(v));
        }
        if (!res.values.empty()) {
            res.initial = res.values.front();
            F worst(0);
            const F v0 = mon.evaluate(traj.values[0], traj.has_integrals() ? traj.integrals[0] : none, traj.times[0]);
            for (std::size_t s = 0; s < traj.samples(); ++s) {
                const F v = mon.evaluate(traj.values[s], traj.has_integrals() ? traj.integrals[s] : none, traj.times[s]);
                worst = std::max(worst, F(std::fabs(v - v0)));
            }
            res.drift = static_cast<double>(worst);
        }
        out.push_back(std::move(res));
    }
    return out;
}

namespace {

template <class F>
void require_width(const std::vector<F>& b, std::size_t width, const std::string& name) {
    if (b.size() != width)
        fail(ErrorKind::DimensionMismatch, "monitor " + name + " expects " + std::to_string(width) + " coefficients");
}

template <class F>
LatticeState<double> as_double_state(Family family, int order, const std::vector<F>& coeffs) {
    LatticeState<double> s;
    s.family = family;
    s.order = order;
    s.boundary = Boundary::OpenEnd;
    for (const F& x : coeffs) s.coeffs.push_back(static_cast<double>(x));
    return s;
}

}  // namespace

template <class F>
std::vector<IntegralMonitor<F>> example_monitors(F a0_seed) {
    std::vector<IntegralMonitor<F>> out;
    out.push_back({"I1", [](const std::vector<F>& b, const std::vector<F>&, F) {
                       require_width(b, 4, "I1");
                       return b[0] + b[1] + b[2] + b[3];
                   }, false});
    out.push_back({"I2", [](const std::vector<F>& b, const std::vector<F>&, F) {
                       require_width(b, 4, "I2");
                       return -b[0] * b[3];
                   }, false});
    out.push_back({"J2", [](const std::vector<F>& b, const std::vector<F>&, F) {
                       require_width(b, 4, "J2");
                       return -b[0] * b[2] / b[1];
                   }, false});
    out.push_back({"J1", [a0_seed](const std::vector<F>& b, const std::vector<F>& integrals, F) {
                       require_width(b, 4, "J1");
                       require_width(integrals, 4, "J1");
                       return b[0] * (b[1] + b[2]) / (b[1] * a0_seed * std::exp(integrals[1]));
                   }, true});
    return out;
}

template <class F>
std::vector<IntegralMonitor<F>> frc_monitors(FrcKind kind, int order, int n) {
    const Family family = is_tilde(kind) ? Family::Sum : Family::Product;
    std::vector<IntegralMonitor<F>> out;
    for (int v = 0; v < frc_shape(kind, n, order).rank; ++v) {
        std::string name = std::string(to_string(kind)) + "_" + std::to_string(v);
        out.push_back({name, [kind, family, order, n, v](const std::vector<F>& coeffs, const std::vector<F>&, F) {
                           require_width(coeffs, static_cast<std::size_t>(n + 1), "FRC");
                           const LatticeState<double> s = as_double_state(family, order, coeffs);
                           const auto table = compute_moments(lax_matrix(s), frc_table_depth(kind, n, order));
                           const FrcSet<double> frc = compute_frc(table, kind, n);
                           return static_cast<F>(frc.values[static_cast<std::size_t>(v)]);
                       }, false});
    }
    return out;
}

template <class F>
std::vector<IntegralMonitor<F>> charpoly_monitors(Family family, int order, int n) {
    std::vector<IntegralMonitor<F>> out;
    const int degree = (family == Family::Product ? n + 2 : n + order + 1);
    for (int v = 0; v < degree; ++v) {
        out.push_back({"c_" + std::to_string(v), [family, order, n, v](const std::vector<F>& coeffs, const std::vector<F>&, F) {
                           require_width(coeffs, static_cast<std::size_t>(n + 1), "charpoly");
                           const LatticeState<double> s = as_double_state(family, order, coeffs);
                           const CharPoly<double> cp = charpoly(lax_matrix(s));
                           return static_cast<F>(cp.coeffs[static_cast<std::size_t>(v)]);
                       }, false});
    }
    return out;
}

template <class F>
NonconstancyReport verify_d_tilde_nonconstancy(const Trajectory<F>& traj) {
    if (traj.family != Family::Sum || traj.order != 2)
        fail(ErrorKind::InvalidArgument, "verify_d_tilde_nonconstancy: expected a sum lattice with p = 2");
    NonconstancyReport rep;
    double d2_0 = 0.0;
    double d5_0 = 0.0;
    for (std::size_t s = 0; s < traj.samples(); ++s) {
        const auto& b = traj.values[s];
        require_width(b, 4, "D_tilde");
        const LatticeState<double> st = as_double_state(Family::Sum, 2, b);
        const auto table = compute_moments(lax_matrix(st), frc_table_depth(FrcKind::DTilde, 3, 2));
        const FrcSet<double> frc = compute_frc(table, FrcKind::DTilde, 3);
        const double d2 = frc.values[2];
        const double d5 = frc.values[5];
        const double b0 = st.coeffs[0], b1 = st.coeffs[1], b2 = st.coeffs[2];
        rep.closed_form_gap = std::max({rep.closed_form_gap, std::fabs(d2 - (b0 + b0 * b2 / b1)), std::fabs(d5 + b0 * b2 / b1)});
        if (s == 0) {
            d2_0 = d2;
            d5_0 = d5;
        }
        rep.d2_drift = std::max(rep.d2_drift, std::fabs(d2 - d2_0));
        rep.d5_drift = std::max(rep.d5_drift, std::fabs(d5 - d5_0));
    }
    rep.d2_moves = rep.d2_drift > 1e-4;
    rep.d5_conserved = rep.d5_drift <= 1e-8;
    return rep;
}

S31Report verify_s31_identity(const LatticeState<Rational>& a) {
    if (a.family != Family::Product || a.order != 2 || a.count() != 5)
        fail(ErrorKind::InvalidArgument, "verify_s31_identity: expected a product lattice with p = 2 and N = 4");
    const auto& c = a.coeffs;
    const MomentTable<Rational> s = compute_moments(lax_matrix(a), frc_table_depth(FrcKind::DTilde, 3, 2));
    S31Report rep;
    rep.s31 = s(3, 1, 1);
    rep.rhs = (c[1] + c[3]) * s(1, 2, 1) - c[0] * c[3] * s(0, 1, 1);
    rep.identity_ok = rep.s31 == rep.rhs;
    const MomentTable<Rational> t = miura_moments_forward(s);
    const Rational d2 = c[0] * (c[1] + c[3]);
    const Rational d5 = -c[0] * c[3];
    rep.s31_tilde = t(3, 1, 1);
    rep.rhs_tilde = d2 * t(1, 1, 2) + d5 * t(0, 1, 1);
    rep.tilde_ok = rep.s31_tilde == rep.rhs_tilde;
    const FrcSet<Rational> frc = compute_frc(t, FrcKind::DTilde, 3);
    rep.frc_ok = frc.values[2] == d2 && frc.values[5] == d5;
    return rep;
}

template FrcSet<Rational> compute_frc(const MomentTable<Rational>&, FrcKind, int);
template FrcSet<double> compute_frc(const MomentTable<double>&, FrcKind, int);
template std::vector<HankelPosition> frc_recurrence_violations(const MomentTable<Rational>&, const FrcSet<Rational>&, int);
template std::vector<HankelPosition> frc_recurrence_violations(const MomentTable<double>&, const FrcSet<double>&, int);
template CharPoly<Rational> charpoly(const BandMatrix<Rational>&);
template CharPoly<double> charpoly(const BandMatrix<double>&);
template Rational cayley_hamilton_residual(const DenseMatrix<Rational>&, const CharPoly<Rational>&);
template double cayley_hamilton_residual(const DenseMatrix<double>&, const CharPoly<double>&);
template std::vector<MonitorResult> monitor_integrals(const Trajectory<double>&, const std::vector<IntegralMonitor<double>>&);
template std::vector<MonitorResult> monitor_integrals(const Trajectory<long double>&,
                                                      const std::vector<IntegralMonitor<long double>>&);
template std::vector<IntegralMonitor<double>> example_monitors(double);
template std::vector<IntegralMonitor<long double>> example_monitors(long double);
template std::vector<IntegralMonitor<double>> frc_monitors(FrcKind, int, int);
template std::vector<IntegralMonitor<long double>> frc_monitors(FrcKind, int, int);
template std::vector<IntegralMonitor<double>> charpoly_monitors(Family, int, int);
template std::vector<IntegralMonitor<long double>> charpoly_monitors(Family, int, int);
template NonconstancyReport verify_d_tilde_nonconstancy(const Trajectory<double>&);
template NonconstancyReport verify_d_tilde_nonconstancy(const Trajectory<long double>&);

}  // namespace bogolat
