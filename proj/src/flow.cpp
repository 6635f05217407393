#include "bogolat/flow.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "bogolat/hankel.hpp"

namespace bogolat {

std::string_view to_string(Method method) {
    return method == Method::RK4 ? "rk4" : "moment-series";
}

namespace {

struct FlowShape {
    int p;       // order of the lattice
    int stride;  // p + 1
    bool product;
};

template <class T>
FlowShape flow_shape(const MomentTable<T>& table, Family family) {
    if (family == Family::Product) {
        if (table.q() != 1) fail(ErrorKind::InvalidArgument, "product-lattice moments need a single column (q = 1)");
        return {table.r(), table.r() + 1, true};
    }
    if (table.r() != 1) fail(ErrorKind::InvalidArgument, "sum-lattice moments need a single row (r = 1)");
    return {table.q(), table.q() + 1, false};
}

}  // namespace

template <class T>
MomentTable<T> moment_rhs(const MomentTable<T>& table, Family family) {
    const FlowShape shape = flow_shape(table, family);
    const int out_k = table.max_index() - shape.stride;
    if (out_k < 0 || (!shape.product && 2 * shape.p > table.max_index()))
        fail(ErrorKind::IndexBeyondTable, "moment_rhs: table too shallow", table.max_index());
    MomentTable<T> out(table.r(), table.q(), out_k, MomentSource::FromEvolution);
    if (shape.product) {
        const T& drift = table(shape.p + 1, 1, 1);
        for (int k = 0; k <= out_k; ++k)
            for (int m = 1; m <= table.r(); ++m) out(k, m, 1) = table(k + shape.stride, m, 1) - drift * table(k, m, 1);
    } else {
        for (int n = 1; n <= table.q(); ++n) {
            const T& drift = table(shape.p + n, 1, n);
            for (int k = 0; k <= out_k; ++k) out(k, 1, n) = table(k + shape.stride, 1, n) - drift * table(k, 1, n);
        }
    }
    return out;
}

template <class T>
SeriesEvaluation<T> evolve_moments_series(const MomentTable<T>& base, Family family, const T& t, int max_k,
                                          const SeriesOptions& options) {
    const FlowShape shape = flow_shape(base, family);
    const int rows = base.r();
    const int cols = base.q();
    if (max_k < 0) fail(ErrorKind::InvalidArgument, "evolve_moments_series: negative depth");
    const int reach = std::max(max_k, shape.product ? 0 : cols - 1);
    if (reach > base.max_index()) fail(ErrorKind::IndexBeyondTable, "evolve_moments_series: table too shallow", reach);
    const int available = (base.max_index() - reach) / shape.stride;

    SeriesEvaluation<T> result;
    result.table = MomentTable<T>(rows, cols, max_k, MomentSource::FromEvolution);
    if (t == T(0)) {
        result.table = base.truncated(max_k);
        result.table.set_source(MomentSource::FromEvolution);
        return result;
    }

    int budget = options.max_terms;
    if constexpr (is_exact_v<T>) {
        if (budget > available)
            fail(ErrorKind::IndexBeyondTable,
                 "evolve_moments_series: " + std::to_string(budget) + " terms need moments up to index " +
                     std::to_string(reach + budget * shape.stride),
                 reach + budget * shape.stride);
    } else if (!options.adaptive && budget > available) {
        fail(ErrorKind::IndexBeyondTable, "evolve_moments_series: table too shallow for the requested terms",
             reach + budget * shape.stride);
    }
    budget = std::min(budget, available);

    // Column n of the numerator shares the denominator of that column; the
    // product family has one column and one denominator.
    std::vector<T> num(static_cast<std::size_t>((max_k + 1) * rows * cols), T(0));
    std::vector<T> den(static_cast<std::size_t>(cols), T(0));
    std::vector<double> den_abs(static_cast<std::size_t>(cols), 0.0);
    auto slot = [&](int k, int m, int n) { return static_cast<std::size_t>((k * rows + (m - 1)) * cols + (n - 1)); };
    auto den_index = [&](int n, int l) { return (shape.product ? 0 : n - 1) + shape.stride * l; };

    T coeff(1);
    double prev_ratio = INFINITY;
    double ratio = INFINITY;
    int used = -1;
    for (int l = 0; l <= budget; ++l) {
        if (l > 0) coeff = coeff * t / T(l);
        ratio = 0.0;
        auto track = [&](const T& term, const T& partial) {
            if (l == 0 || ScalarTraits<T>::is_zero(partial)) return;
            ratio = std::max(ratio, to_double(scalar_abs(term)) / to_double(scalar_abs(partial)));
        };
        for (int n = 1; n <= cols; ++n) {
            const T term = coeff * base(den_index(n, l), 1, n);
            den[static_cast<std::size_t>(n - 1)] += term;
            den_abs[static_cast<std::size_t>(n - 1)] += std::fabs(to_double(term));
            track(term, den[static_cast<std::size_t>(n - 1)]);
        }
        for (int k = 0; k <= max_k; ++k)
            for (int m = 1; m <= rows; ++m)
                for (int n = 1; n <= cols; ++n) {
                    const T& s = base(k + shape.stride * l, m, n);
                    if (ScalarTraits<T>::is_zero(s)) continue;
                    const T term = coeff * s;
                    T& partial = num[slot(k, m, n)];
                    partial += term;
                    track(term, partial);
                }
        used = l;
        if constexpr (!is_exact_v<T>) {
            if (!std::isfinite(ratio)) break;
            if (options.adaptive && l >= 1 && ratio < options.tolerance && prev_ratio < options.tolerance) break;
        }
        prev_ratio = ratio;
    }
    result.terms = used;
    result.tail_estimate = ratio;
    if (!(ratio <= options.tolerance))
        fail(ErrorKind::SeriesNotConverged,
             "moment series tail estimate " + to_string(ratio) + " after " + std::to_string(used) + " terms" +
                 (budget < options.max_terms ? " (limited by table depth)" : ""));

    for (int n = 1; n <= cols; ++n) {
        const T& d = den[static_cast<std::size_t>(n - 1)];
        bool vanished = ScalarTraits<T>::is_zero(d);
        if constexpr (!is_exact_v<T>) vanished = vanished || std::fabs(to_double(d)) <= 1e-12 * den_abs[static_cast<std::size_t>(n - 1)];
        if (vanished) fail(ErrorKind::DenominatorVanished, "moment series denominator vanishes in column " + std::to_string(n), n);
    }
    for (int k = 0; k <= max_k; ++k)
        for (int m = 1; m <= rows; ++m)
            for (int n = 1; n <= cols; ++n) result.table(k, m, n) = num[slot(k, m, n)] / den[static_cast<std::size_t>(n - 1)];
    return result;
}

namespace {

template <class F>
Trajectory<F> rk4_run(const LatticeState<F>& initial, long long steps, F dt, bool accumulate, int record_every, double guard) {
    const std::size_t n = initial.count();
    Trajectory<F> traj;
    traj.family = initial.family;
    traj.order = initial.order;
    traj.boundary = initial.boundary;
    traj.method = Method::RK4;

    std::vector<F> y = initial.coeffs;
    std::vector<F> acc(n, F(0));
    auto record = [&](long long step) {
        traj.times.push_back(initial.time + static_cast<F>(step) * dt);
        traj.values.push_back(y);
        if (accumulate) traj.integrals.push_back(acc);
    };
    record(0);

    std::vector<F> stage(n);
    auto rhs = [&](const std::vector<F>& x) { return lattice_rhs<F>(initial.family, initial.order, x); };
    for (long long step = 1; step <= steps; ++step) {
        const std::vector<F> k1 = rhs(y);
        for (std::size_t i = 0; i < n; ++i) stage[i] = y[i] + dt / 2 * k1[i];
        const std::vector<F> s2 = stage;
        const std::vector<F> k2 = rhs(s2);
        for (std::size_t i = 0; i < n; ++i) stage[i] = y[i] + dt / 2 * k2[i];
        const std::vector<F> s3 = stage;
        const std::vector<F> k3 = rhs(s3);
        for (std::size_t i = 0; i < n; ++i) stage[i] = y[i] + dt * k3[i];
        const std::vector<F> k4 = rhs(stage);
        for (std::size_t i = 0; i < n; ++i) {
            // the integral's stage derivatives are the stage states themselves
            if (accumulate) acc[i] += dt / 6 * (y[i] + 2 * s2[i] + 2 * s3[i] + stage[i]);
            y[i] += dt / 6 * (k1[i] + 2 * k2[i] + 2 * k3[i] + k4[i]);
        }
        for (std::size_t i = 0; i < n; ++i)
            if (!std::isfinite(static_cast<double>(y[i])) || std::fabs(static_cast<double>(y[i])) > guard)
                fail(ErrorKind::BlowUp,
                     "coefficient " + std::to_string(i) + " left the bounded range at t = " +
                         to_string(static_cast<double>(initial.time + static_cast<F>(step) * dt)),
                     static_cast<std::ptrdiff_t>(i));
        if (step % record_every == 0 || step == steps) record(step);
    }
    return traj;
}

}  // namespace

template <class F>
Trajectory<F> rk4_integrate(const LatticeState<F>& initial, F t_end, F dt, const Rk4Options& options) {
    initial.validate();
    if (!(dt > 0)) fail(ErrorKind::InvalidArgument, "rk4_integrate: dt must be positive");
    if (t_end < 0) fail(ErrorKind::InvalidArgument, "rk4_integrate: t_end must be nonnegative");
    if (options.record_every < 1) fail(ErrorKind::InvalidArgument, "rk4_integrate: record_every must be positive");
    const long long steps = std::llround(static_cast<double>(t_end / dt));
    if (std::fabs(static_cast<double>(static_cast<F>(steps) * dt - t_end)) > 1e-9 * static_cast<double>(std::max(t_end, dt)))
        fail(ErrorKind::InvalidArgument, "rk4_integrate: t_end is not a multiple of dt");

    Trajectory<F> traj = rk4_run(initial, steps, dt, options.accumulate, options.record_every, options.overflow_guard);
    if (options.estimate_error) {
        const Trajectory<F> fine =
            rk4_run(initial, 2 * steps, dt / 2, false, 2 * options.record_every, options.overflow_guard);
        traj.diagnostics.assign(traj.samples(), 0.0);
        for (std::size_t s = 0; s < traj.samples(); ++s) {
            double worst = 0.0;
            for (std::size_t i = 0; i < initial.count(); ++i)
                worst = std::max(worst, static_cast<double>(std::fabs(traj.values[s][i] - fine.values[s][i])) / 15.0);
            traj.diagnostics[s] = worst;
        }
    }
    return traj;
}

template <class T>
Trajectory<T> solve_cauchy(const LatticeState<T>& initial, std::span<const T> t_grid, int depth,
                           const SeriesOptions& options) {
    initial.validate();
    if (depth < 1 || depth > static_cast<int>(initial.count()))
        fail(ErrorKind::InvalidArgument, "solve_cauchy: depth must lie in 1..coefficient count");
    for (std::size_t i = 0; i < t_grid.size(); ++i) {
        if (t_grid[i] < T(0)) fail(ErrorKind::InvalidArgument, "solve_cauchy: negative time", static_cast<std::ptrdiff_t>(i));
        if (i > 0 && !(t_grid[i - 1] < t_grid[i]))
            fail(ErrorKind::InvalidArgument, "solve_cauchy: time grid must increase", static_cast<std::ptrdiff_t>(i));
    }
    const int p = initial.order;
    const bool product = initial.family == Family::Product;
    const int r = product ? p : 1;
    const int q = product ? 1 : p;
    const int needed = alpha_depth(r, q, depth - 1 + q);
    const int table_depth = needed + (p + 1) * std::max(options.max_terms, 0);
    const MomentTable<T> base = compute_moments(lax_matrix(initial), table_depth);

    Trajectory<T> traj;
    traj.family = initial.family;
    traj.order = p;
    traj.boundary = initial.boundary;
    traj.method = Method::MomentSeries;
    for (std::size_t i = 0; i < t_grid.size(); ++i) {
        const T& t = t_grid[i];
        traj.times.push_back(t);
        if (t == T(0)) {
            traj.values.emplace_back(initial.coeffs.begin(), initial.coeffs.begin() + depth);
            traj.diagnostics.push_back(0.0);
            continue;
        }
        SeriesEvaluation<T> eval;
        try {
            eval = evolve_moments_series(base, initial.family, t, needed, options);
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::SeriesNotConverged) throw;
            fail(ErrorKind::AdaptiveHorizonExceeded,
                 "t = " + to_string(to_double(t)) + " lies beyond the trusted horizon of the moment series: " + e.what(),
                 static_cast<std::ptrdiff_t>(i));
        }
        LatticeState<T> rec = reconstruct_sparse_lattice(eval.table, product ? SparsityKind::L1Type : SparsityKind::L2Type, depth);
        traj.values.push_back(std::move(rec.coeffs));
        traj.diagnostics.push_back(eval.tail_estimate);
    }
    return traj;
}

template <class F>
std::vector<F> cumulative_simpson(std::span<const F> times, std::span<const F> values) {
    if (times.size() != values.size()) fail(ErrorKind::DimensionMismatch, "cumulative_simpson: length mismatch");
    const std::size_t n = times.size();
    std::vector<F> out(n, F(0));
    if (n < 2) return out;
    const F h = times[1] - times[0];
    if (!(h > 0)) fail(ErrorKind::InvalidArgument, "cumulative_simpson: times must increase");
    for (std::size_t i = 1; i < n; ++i)
        if (std::fabs(static_cast<double>((times[i] - times[i - 1]) - h)) > 1e-6 * static_cast<double>(h))
            fail(ErrorKind::InvalidArgument, "cumulative_simpson: grid is not uniform", static_cast<std::ptrdiff_t>(i));
    const auto& f = values;
    if (n == 2) {
        out[1] = h / 2 * (f[0] + f[1]);
        return out;
    }
    out[1] = h / 12 * (5 * f[0] + 8 * f[1] - f[2]);
    for (std::size_t i = 2; i < n; i += 2) out[i] = out[i - 2] + h / 3 * (f[i - 2] + 4 * f[i - 1] + f[i]);
    for (std::size_t i = 3; i < n; i += 2)
        out[i] = out[i - 3] + 3 * h / 8 * (f[i - 3] + 3 * f[i - 2] + 3 * f[i - 1] + f[i]);
    return out;
}

template MomentTable<Rational> moment_rhs(const MomentTable<Rational>&, Family);
template MomentTable<double> moment_rhs(const MomentTable<double>&, Family);
template SeriesEvaluation<Rational> evolve_moments_series(const MomentTable<Rational>&, Family, const Rational&, int,
                                                          const SeriesOptions&);
template SeriesEvaluation<double> evolve_moments_series(const MomentTable<double>&, Family, const double&, int,
                                                        const SeriesOptions&);
template Trajectory<double> rk4_integrate(const LatticeState<double>&, double, double, const Rk4Options&);
template Trajectory<long double> rk4_integrate(const LatticeState<long double>&, long double, long double,
                                               const Rk4Options&);
template Trajectory<Rational> solve_cauchy(const LatticeState<Rational>&, std::span<const Rational>, int,
                                           const SeriesOptions&);
template Trajectory<double> solve_cauchy(const LatticeState<double>&, std::span<const double>, int, const SeriesOptions&);
template std::vector<double> cumulative_simpson(std::span<const double>, std::span<const double>);
template std::vector<long double> cumulative_simpson(std::span<const long double>, std::span<const long double>);

}  // namespace bogolat
