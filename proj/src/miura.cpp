#include "bogolat/miura.hpp"

#include <cmath>
#include <string>

#include "bogolat/hankel.hpp"

namespace bogolat {

template <class T>
void MiuraSeeds<T>::validate(int p) const {
    if (static_cast<int>(values.size()) != p - 1)
        fail(ErrorKind::InvalidArgument,
             "Miura seeds: expected " + std::to_string(p - 1) + " values, got " + std::to_string(values.size()));
    for (std::size_t i = 0; i < values.size(); ++i)
        if (ScalarTraits<T>::is_zero(values[i]))
            fail(ErrorKind::ZeroCoefficient, "Miura seed a_" + std::to_string(i) + "(0) is zero", static_cast<std::ptrdiff_t>(i));
}

namespace {

void require_order(int p, const char* who) {
    if (p < 2) fail(ErrorKind::InvalidArgument, std::string(who) + ": the Miura map needs p >= 2");
}

template <class T>
std::vector<T> forward_window(std::span<const T> a, int p) {
    std::vector<T> b;
    if (a.size() + 1 < static_cast<std::size_t>(p) + 1) return b;
    for (std::size_t i = 0; i + static_cast<std::size_t>(p) <= a.size(); ++i) {
        T prod(1);
        for (int j = 0; j < p; ++j) prod *= a[i + static_cast<std::size_t>(j)];
        b.push_back(std::move(prod));
    }
    return b;
}

template <class T>
std::vector<T> inverse_window(std::span<const T> b, std::span<const T> head, int p) {
    std::vector<T> a(head.begin(), head.end());
    for (std::size_t i = static_cast<std::size_t>(p - 1); i < b.size() + static_cast<std::size_t>(p - 1); ++i) {
        T den(1);
        for (std::size_t j = i - static_cast<std::size_t>(p - 1); j < i; ++j) den *= a[j];
        if (ScalarTraits<T>::is_zero(den))
            fail(ErrorKind::ZeroCoefficient, "inverse Miura: vanishing product before a_" + std::to_string(i),
                 static_cast<std::ptrdiff_t>(i));
        a.push_back(b[i - static_cast<std::size_t>(p - 1)] / den);
    }
    return a;
}

template <class T>
T scalar_exp(const T& x) {
    if constexpr (is_exact_v<T>) {
        if (x != 0) fail(ErrorKind::InvalidArgument, "exact backend cannot represent a nonzero exponential factor");
        return T(1);
    } else {
        return std::exp(x);
    }
}

}  // namespace

template <class T>
LatticeState<T> miura_forward(const LatticeState<T>& a) {
    if (a.family != Family::Product) fail(ErrorKind::InvalidArgument, "miura_forward: expected a product lattice");
    require_order(a.order, "miura_forward");
    a.validate();
    const int p = a.order;
    if (a.count() < static_cast<std::size_t>(p))
        fail(ErrorKind::DimensionMismatch, "miura_forward: fewer than p coefficients");
    LatticeState<T> b{Family::Sum, p, forward_window<T>(a.coeffs, p), a.boundary, a.time};
    if (a.boundary == Boundary::OpenEnd && b.count() < static_cast<std::size_t>(2 * p))
        fail(ErrorKind::DimensionMismatch, "miura_forward: open-end lattices need N >= 2p-1 on the sum side (got N = " +
                                               std::to_string(b.count() - 1) + ")");
    return b;
}

template <class T>
Trajectory<T> miura_forward(const Trajectory<T>& a) {
    if (a.family != Family::Product) fail(ErrorKind::InvalidArgument, "miura_forward: expected a product-lattice trajectory");
    Trajectory<T> b;
    b.family = Family::Sum;
    b.order = a.order;
    b.boundary = a.boundary;
    b.method = a.method;
    b.times = a.times;
    b.diagnostics = a.diagnostics;
    for (std::size_t s = 0; s < a.samples(); ++s) b.values.push_back(miura_forward(a.state(s)).coeffs);
    return b;
}

template <class T>
LatticeState<T> miura_inverse(const LatticeState<T>& b, std::span<const T> head) {
    if (b.family != Family::Sum) fail(ErrorKind::InvalidArgument, "miura_inverse: expected a sum lattice");
    require_order(b.order, "miura_inverse");
    b.validate();
    MiuraSeeds<T>{std::vector<T>(head.begin(), head.end())}.validate(b.order);
    return LatticeState<T>{Family::Product, b.order, inverse_window<T>(b.coeffs, head, b.order), b.boundary, b.time};
}

template <class F>
Trajectory<F> miura_inverse(const Trajectory<F>& b, const MiuraSeeds<F>& seeds, const MiuraInverseOptions& options) {
    if (b.family != Family::Sum) fail(ErrorKind::InvalidArgument, "miura_inverse: expected a sum-lattice trajectory");
    const int p = b.order;
    require_order(p, "miura_inverse");
    seeds.validate(p);
    if (b.samples() == 0) return Trajectory<F>{Family::Product, p, b.boundary, b.method, {}, {}, {}, {}};
    const std::size_t width = b.values.front().size();
    if (width < static_cast<std::size_t>(p))
        fail(ErrorKind::DimensionMismatch, "miura_inverse: the sum lattice needs at least p coefficients");

    // int_0^t b_{i+1} for i = 0..p-2 at every sample
    std::vector<std::vector<F>> gauge(b.samples(), std::vector<F>(static_cast<std::size_t>(p - 1), F(0)));
    if (b.has_integrals()) {
        for (std::size_t s = 0; s < b.samples(); ++s)
            for (int i = 0; i + 1 < p; ++i) gauge[s][static_cast<std::size_t>(i)] = b.integrals.at(s).at(static_cast<std::size_t>(i + 1));
    } else if (options.allow_quadrature && b.samples() >= 2) {
        std::vector<F> rel_times(b.times.size());
        for (std::size_t s = 0; s < b.samples(); ++s) rel_times[s] = b.times[s] - b.times.front();
        for (int i = 0; i + 1 < p; ++i) {
            std::vector<F> f(b.samples());
            for (std::size_t s = 0; s < b.samples(); ++s) f[s] = b.values[s][static_cast<std::size_t>(i + 1)];
            const std::vector<F> cum = cumulative_simpson<F>(rel_times, f);
            for (std::size_t s = 0; s < b.samples(); ++s) gauge[s][static_cast<std::size_t>(i)] = cum[s];
        }
    } else if (b.samples() > 1 || !options.allow_quadrature) {
        fail(ErrorKind::MissingAccumulators, "miura_inverse: the trajectory carries no integrals of b");
    }

    Trajectory<F> a;
    a.family = Family::Product;
    a.order = p;
    a.boundary = b.boundary;
    a.method = b.method;
    a.times = b.times;
    a.diagnostics = b.diagnostics;
    for (std::size_t s = 0; s < b.samples(); ++s) {
        std::vector<F> head(static_cast<std::size_t>(p - 1));
        for (int i = 0; i + 1 < p; ++i)
            head[static_cast<std::size_t>(i)] = seeds.values[static_cast<std::size_t>(i)] * std::exp(gauge[s][static_cast<std::size_t>(i)]);
        a.values.push_back(inverse_window<F>(b.values[s], head, p));
    }
    return a;
}

template <class T>
MomentTable<T> miura_moments_forward(const MomentTable<T>& s) {
    if (s.q() != 1) fail(ErrorKind::InvalidArgument, "miura_moments_forward: expected an L1-type table (q = 1)");
    const int p = s.r();
    require_order(p, "miura_moments_forward");
    if (s.max_index() < p - 1) fail(ErrorKind::IndexBeyondTable, "miura_moments_forward: table too shallow", p - 1);
    MomentTable<T> out(1, p, s.max_index(), MomentSource::FromMiura);
    for (int l = 1; l <= p; ++l) {
        const T& scale = s(l - 1, l, 1);
        if (ScalarTraits<T>::is_zero(scale))
            fail(ErrorKind::DegenerateMoments, "S_" + std::to_string(l - 1) + "^" + std::to_string(l) + " vanishes", l - 1);
        for (int k = 0; k <= s.max_index(); ++k) out(k, 1, l) = s(k, l, 1) / scale;
    }
    return out;
}

template <class T>
MomentTable<T> miura_moments_inverse(const MomentTable<T>& tilde, const MiuraSeeds<T>& seeds, std::span<const T> exponents) {
    if (tilde.r() != 1) fail(ErrorKind::InvalidArgument, "miura_moments_inverse: expected an L2-type table (r = 1)");
    const int p = tilde.q();
    require_order(p, "miura_moments_inverse");
    seeds.validate(p);
    if (static_cast<int>(exponents.size()) != p)
        fail(ErrorKind::DimensionMismatch, "miura_moments_inverse: expected " + std::to_string(p) + " exponents");
    MomentTable<T> out(p, 1, tilde.max_index(), MomentSource::FromMiura);
    T seed_product(1);
    for (int l = 1; l <= p; ++l) {
        if (l >= 2) seed_product *= seeds.values[static_cast<std::size_t>(l - 2)];
        const T factor = seed_product * scalar_exp(exponents[static_cast<std::size_t>(l - 1)]);
        if (ScalarTraits<T>::is_zero(factor))
            fail(ErrorKind::DegenerateMoments, "miura_moments_inverse: vanishing scale for l = " + std::to_string(l), l);
        for (int k = 0; k <= tilde.max_index(); ++k) out(k, l, 1) = factor * tilde(k, 1, l);
    }
    return out;
}

template <class F>
std::vector<std::vector<F>> miura_exponent_integrals(std::span<const MomentTable<F>> history, std::span<const F> times) {
    if (history.empty()) fail(ErrorKind::MissingHistory, "miura_exponent_integrals: empty history");
    if (history.size() != times.size())
        fail(ErrorKind::MissingHistory, "miura_exponent_integrals: history and times differ in length");
    const int p = history.front().q();
    if (history.front().r() != 1) fail(ErrorKind::InvalidArgument, "miura_exponent_integrals: expected L2-type tables");
    std::vector<F> rel(times.size());
    for (std::size_t s = 0; s < times.size(); ++s) rel[s] = times[s] - times.front();
    std::vector<std::vector<F>> out(history.size(), std::vector<F>(static_cast<std::size_t>(p), F(0)));
    for (int l = 2; l <= p; ++l) {
        std::vector<F> g(history.size());
        for (std::size_t s = 0; s < history.size(); ++s)
            g[s] = history[s](l + p, 1, l) - history[s](p + 1, 1, 1);
        const std::vector<F> cum = cumulative_simpson<F>(rel, g);
        for (std::size_t s = 0; s < history.size(); ++s) out[s][static_cast<std::size_t>(l - 1)] = cum[s];
    }
    return out;
}

TransportReport<Rational> verify_determinant_transport(const LatticeState<Rational>& a, int max_k) {
    const LatticeState<Rational> b = miura_forward(a);
    const int p = a.order;
    const MomentTable<Rational> s = compute_moments(lax_matrix(a), alpha_depth(1, p, max_k));
    const MomentTable<Rational> tilde = miura_moments_forward(s);
    TransportReport<Rational> report;
    report.transformed = leading_minors(tilde, max_k);
    for (int k = 0; k <= max_k; ++k) {
        report.closed_form.push_back(delta_closed_form_l2<Rational>(b.coeffs, k, p));
        report.transport.push_back(delta_transport_product<Rational>(b.coeffs, k, p));
        const auto ku = static_cast<std::size_t>(k);
        if (report.transformed[ku] != report.closed_form[ku] || report.transformed[ku] != report.transport[ku])
            report.mismatches.push_back(k);
    }
    return report;
}

template <class T>
std::vector<MomentIndex> commuting_square_mismatches(const LatticeState<T>& a, int max_k) {
    const LatticeState<T> b = miura_forward(a);
    const MomentTable<T> lhs = miura_moments_forward(compute_moments(lax_matrix(a), max_k));
    const MomentTable<T> rhs = compute_moments(lax_matrix(b), max_k);
    std::vector<MomentIndex> bad;
    for (int k = 0; k <= max_k; ++k)
        for (int n = 1; n <= a.order; ++n) {
            const T& x = lhs(k, 1, n);
            const T& y = rhs(k, 1, n);
            bool same;
            if constexpr (is_exact_v<T>) {
                same = x == y;
            } else {
                same = std::fabs(x - y) <= 1e-9 * std::max({std::fabs(x), std::fabs(y), T(1)});
            }
            if (!same) bad.push_back({k, 1, n});
        }
    return bad;
}

template struct MiuraSeeds<Rational>;
template struct MiuraSeeds<double>;
template struct MiuraSeeds<long double>;
template LatticeState<Rational> miura_forward(const LatticeState<Rational>&);
template LatticeState<double> miura_forward(const LatticeState<double>&);
template LatticeState<long double> miura_forward(const LatticeState<long double>&);
template Trajectory<Rational> miura_forward(const Trajectory<Rational>&);
template Trajectory<double> miura_forward(const Trajectory<double>&);
template Trajectory<long double> miura_forward(const Trajectory<long double>&);
template LatticeState<Rational> miura_inverse(const LatticeState<Rational>&, std::span<const Rational>);
template LatticeState<double> miura_inverse(const LatticeState<double>&, std::span<const double>);
template Trajectory<double> miura_inverse(const Trajectory<double>&, const MiuraSeeds<double>&, const MiuraInverseOptions&);
template Trajectory<long double> miura_inverse(const Trajectory<long double>&, const MiuraSeeds<long double>&,
                                               const MiuraInverseOptions&);
template MomentTable<Rational> miura_moments_forward(const MomentTable<Rational>&);
template MomentTable<double> miura_moments_forward(const MomentTable<double>&);
template MomentTable<Rational> miura_moments_inverse(const MomentTable<Rational>&, const MiuraSeeds<Rational>&,
                                                     std::span<const Rational>);
template MomentTable<double> miura_moments_inverse(const MomentTable<double>&, const MiuraSeeds<double>&,
                                                   std::span<const double>);
template std::vector<std::vector<double>> miura_exponent_integrals(std::span<const MomentTable<double>>,
                                                                   std::span<const double>);
template std::vector<MomentIndex> commuting_square_mismatches(const LatticeState<Rational>&, int);
template std::vector<MomentIndex> commuting_square_mismatches(const LatticeState<double>&, int);

}  // namespace bogolat
