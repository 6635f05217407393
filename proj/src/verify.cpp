#include "bogolat/verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <random>
#include <sstream>

#include "bogolat/flow.hpp"
#include "bogolat/hankel.hpp"
#include "bogolat/invariants.hpp"
#include "bogolat/lattice.hpp"
#include "bogolat/miura.hpp"
#include "bogolat/moments.hpp"

namespace bogolat {

namespace {

using Rng = std::mt19937_64;

int uniform_int(Rng& rng, int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(rng);
}

// Small nonzero rationals; negative values only when `signed_values`.
Rational random_rational(Rng& rng, bool signed_values) {
    Rational x(uniform_int(rng, 1, 9), uniform_int(rng, 1, 4));
    if (signed_values && uniform_int(rng, 0, 3) == 0) x = -x;
    return x;
}

template <class T>
T convert(const Rational& x) {
    if constexpr (is_exact_v<T>) return x;
    else return static_cast<T>(x.convert_to<double>());
}

template <class T>
LatticeState<T> random_state(Rng& rng, Family family, int order, int count, bool signed_values) {
    LatticeState<T> s;
    s.family = family;
    s.order = order;
    for (int i = 0; i < count; ++i) s.coeffs.push_back(convert<T>(random_rational(rng, signed_values)));
    return s;
}

template <class T>
double defect(const T& a, const T& b) {
    if constexpr (is_exact_v<T>) return to_double(scalar_abs(T(a - b)));
    else return std::fabs(a - b) / std::max({1.0, std::fabs(double(a)), std::fabs(double(b))});
}

// Exact equality for rationals, relative tolerance for floats.
template <class T>
bool same(const T& a, const T& b, double rel = 1e-9) {
    if constexpr (is_exact_v<T>) return a == b;
    else return defect(a, b) <= rel;
}

template <class T>
std::string backend_name() {
    return is_exact_v<T> ? "rational" : "float64";
}

struct Tally {
    int failures = 0;
    double worst = 0.0;
    std::ostringstream first;

    void record(bool ok, double measure, const std::string& what) {
        worst = std::max(worst, measure);
        if (!ok && failures++ == 0) first << what;
    }

    CheckResult finish(std::string name, std::string backend, int total) const {
        CheckResult r{std::move(name), failures == 0, std::move(backend), worst, {}};
        r.detail = std::to_string(total - failures) + "/" + std::to_string(total) + " cases";
        if (failures) r.detail += "; first failure: " + first.str();
        return r;
    }
};

std::string describe(const std::vector<Rational>& v) {
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + to_string(v[i]);
    return s + ")";
}

template <class T>
std::string describe(const LatticeState<T>& s) {
    std::string out = std::string(to_string(s.family)) + " p=" + std::to_string(s.order) + " (";
    for (std::size_t i = 0; i < s.count(); ++i) {
        if constexpr (is_exact_v<T>) out += (i ? "," : "") + to_string(s.coeffs[i]);
        else out += (i ? "," : "") + to_string(double(s.coeffs[i]));
    }
    return out + ")";
}

SparsityKind sparsity_of(Family family) {
    return family == Family::Product ? SparsityKind::L1Type : SparsityKind::L2Type;
}

// Deepest moment index needed to rebuild `count` coefficients.
int reconstruction_depth(Family family, int order, int count) {
    return family == Family::Product ? alpha_depth(order, 1, count) : alpha_depth(1, order, count - 1 + order);
}

template <class T>
CheckResult check_lax_pair(const VerifyOptions& o, Rng& rng) {
    Tally t;
    int total = 0;
    for (Family family : {Family::Product, Family::Sum})
        for (int c = 0; c < o.cases; ++c, ++total) {
            const auto s = random_state<T>(rng, family, uniform_int(rng, 2, 3), uniform_int(rng, 1, 9), true);
            const double res = to_double(lax_residual(s));
            t.record(is_exact_v<T> ? res == 0.0 : res <= 1e-9, res, describe(s));
        }
    return t.finish("lax_pair", backend_name<T>(), total);
}

template <class T>
CheckResult check_reconstruction(const VerifyOptions& o, Rng& rng) {
    Tally t;
    int total = 0;
    for (Family family : {Family::Product, Family::Sum})
        for (int c = 0; c < o.cases; ++c, ++total) {
            const int p = uniform_int(rng, 2, 3);
            const auto s = random_state<T>(rng, family, p, uniform_int(rng, p, is_exact_v<T> ? 9 : 6), true);
            const auto table = compute_moments(lax_matrix(s), reconstruction_depth(family, p, int(s.count())));
            const auto back = reconstruct_sparse_lattice(table, sparsity_of(family), int(s.count()));
            bool ok = back.family == family && back.order == p && back.count() == s.count();
            double worst = 0.0;
            for (std::size_t i = 0; ok && i < s.count(); ++i) {
                worst = std::max(worst, defect(back.coeffs[i], s.coeffs[i]));
                ok = same(back.coeffs[i], s.coeffs[i], 1e-8);
            }
            t.record(ok, worst, describe(s));
        }
    return t.finish("reconstruction", backend_name<T>(), total);
}

template <class T>
CheckResult check_determinants(const VerifyOptions& o, Rng& rng) {
    Tally t;
    int total = 0;
    for (Family family : {Family::Product, Family::Sum})
        for (int c = 0; c < o.cases; ++c, ++total) {
            const int p = uniform_int(rng, 2, 3);
            const auto s = random_state<T>(rng, family, p, uniform_int(rng, 9, 11), true);
            const int r = family == Family::Product ? p : 1;
            const int q = family == Family::Product ? 1 : p;
            const int kmax = 8;
            const auto ladder = delta_ladder(compute_moments(lax_matrix(s), alpha_depth(r, q, kmax)), kmax);
            bool ok = true;
            double worst = 0.0;
            for (int k = 0; k <= kmax && ok; ++k) {
                const T closed = family == Family::Product ? delta_closed_form_l1<T>(s.coeffs, k)
                                                           : delta_closed_form_l2<T>(s.coeffs, k, p);
                worst = std::max(worst, defect(ladder[k], closed));
                ok = same(ladder[k], closed, 1e-8);
            }
            t.record(ok, worst, describe(s));
        }
    LatticeState<T> spot{Family::Product, 2, {T(2), T(3), T(5)}};
    const auto ladder = delta_ladder(compute_moments(lax_matrix(spot), alpha_depth(2, 1, 2)), 2);
    t.record(same(ladder[2], T(12)), defect(ladder[2], T(12)), "spot value Delta_2 for a=(2,3,5)");
    return t.finish("determinants", backend_name<T>(), total + 1);
}

// Central differences of the moments along an RK4 trajectory against the
// moment evolution law.
CheckResult check_moment_evolution(const VerifyOptions& o, Rng& rng) {
    Tally t;
    int total = 0;
    const double h = 1e-4;
    for (Family family : {Family::Product, Family::Sum})
        for (int c = 0; c < std::max(1, o.cases / 2); ++c, ++total) {
            const int p = 2;
            auto s = random_state<double>(rng, family, p, 5, false);
            const auto traj = rk4_integrate<double>(s, 5 * 0.01 + h, h);
            const int depth = 12;
            double worst = 0.0;
            for (int sample = 1; sample <= 5; ++sample) {
                const std::size_t i = static_cast<std::size_t>(std::lround(sample * 0.01 / h));
                const auto mid = compute_moments(lax_matrix(traj.state(i)), depth + p + 1);
                const auto lo = compute_moments(lax_matrix(traj.state(i - 1)), depth);
                const auto hi = compute_moments(lax_matrix(traj.state(i + 1)), depth);
                const auto rhs = moment_rhs(mid, family);
                double scale = 0.0;
                for (int k = 0; k <= depth; ++k)
                    for (int m = 1; m <= rhs.r(); ++m)
                        for (int n = 1; n <= rhs.q(); ++n) scale = std::max(scale, std::fabs(rhs(k, m, n)));
                for (int k = 0; k <= depth; ++k)
                    for (int m = 1; m <= rhs.r(); ++m)
                        for (int n = 1; n <= rhs.q(); ++n) {
                            const double cd = (hi(k, m, n) - lo(k, m, n)) / (2 * h);
                            const double ref = rhs(k, m, n);
                            worst = std::max(worst, std::fabs(cd - ref) / std::max(std::fabs(ref), 1e-3 * scale));
                        }
            }
            t.record(worst <= 1e-5, worst, describe(s));
        }
    return t.finish("moment_evolution", "float64", total);
}

CheckResult check_cauchy_pipeline(const VerifyOptions&, Rng&) {
    Tally t;
    const std::vector<double> grid{0.0, 0.05, 0.1};
    auto compare = [&](const LatticeState<double>& s, int depth, const std::string& what) {
        const auto series = solve_cauchy<double>(s, grid, depth);
        const auto rk = rk4_integrate<double>(s, 0.1, 1e-4, {.record_every = 500});
        double worst = 0.0;
        for (std::size_t g = 0; g < grid.size(); ++g)
            for (int i = 0; i < depth; ++i)
                worst = std::max(worst, std::fabs(series.values[g][i] - rk.values[g][i]));
        t.record(worst <= 1e-6, worst, what);
        return series;
    };
    compare({Family::Product, 2, {2, 3, 5, 7, 11}}, 5, "finite a=(2,3,5,7,11)");
    compare({Family::Sum, 2, {6, 15, 35, 77}}, 4, "finite b=(6,15,35,77)");
    LatticeState<double> w{Family::Product, 2, std::vector<double>(40, 1.0), Boundary::TruncatedSemiInfinite};
    const auto w40 = compare(w, 6, "window W=40");
    w.coeffs.assign(80, 1.0);
    const auto w80 = solve_cauchy<double>(w, grid, 6);
    double doubling = 0.0;
    for (std::size_t g = 0; g < grid.size(); ++g)
        for (int i = 0; i < 6; ++i) doubling = std::max(doubling, std::fabs(w40.values[g][i] - w80.values[g][i]));
    t.record(doubling < 1e-12, doubling, "window doubling W=40 -> 80");
    return t.finish("cauchy_pipeline", "float64", 4);
}

template <class T>
CheckResult check_commuting_square(const VerifyOptions& o, Rng& rng) {
    Tally t;
    int total = 0;
    for (int c = 0; c < o.cases; ++c, ++total) {
        const int p = uniform_int(rng, 2, 3);
        const auto a = random_state<T>(rng, Family::Product, p, uniform_int(rng, 3 * p - 1, 3 * p + 3), true);
        const auto bad = commuting_square_mismatches(a, 10);
        t.record(bad.empty(), double(bad.size()), describe(a));
    }
    // Inverse roundtrip along a trajectory, with accumulators and with Simpson.
    const LatticeState<double> a{Family::Product, 2, {1.0, 0.5, 1.5, 0.75, 1.25}};
    const MiuraSeeds<double> seeds{{a.coeffs[0]}};
    const auto ta = rk4_integrate<double>(a, 0.5, 1e-4, {.record_every = 10});
    const auto via_simpson = miura_inverse(miura_forward(ta), seeds);
    const auto tb = rk4_integrate<double>(miura_forward(a), 0.5, 1e-4, {.accumulate = true, .record_every = 10});
    const auto via_accum = miura_inverse(tb, seeds);
    for (const auto* back : {&via_simpson, &via_accum}) {
        double worst = 0.0;
        for (std::size_t s = 0; s < ta.samples(); ++s)
            for (std::size_t i = 0; i < a.count(); ++i)
                worst = std::max(worst, std::fabs(back->values[s][i] - ta.values[s][i]));
        t.record(worst <= 1e-7, worst, back == &via_simpson ? "inverse roundtrip (Simpson)" : "inverse roundtrip (accumulators)");
    }
    return t.finish("commuting_square", backend_name<T>(), total + 2);
}

CheckResult check_determinant_transport(const VerifyOptions& o, Rng& rng) {
    Tally t;
    int total = 0;
    for (int c = 0; c < o.cases; ++c, ++total) {
        const int p = uniform_int(rng, 2, 3);
        const auto a = random_state<Rational>(rng, Family::Product, p, uniform_int(rng, 3 * p - 1, 3 * p + 3), true);
        const auto rep = verify_determinant_transport(a, 8);
        t.record(rep.ok(), double(rep.mismatches.size()), describe(a));
    }
    return t.finish("determinant_transport", "rational", total);
}

template <class T>
CheckResult check_worked_example(const VerifyOptions&, Rng&) {
    Tally t;
    const std::vector<T> c_expected{T(0), T(0), T(4), T(0), T(0), T(-1)};
    const std::vector<T> d_expected{T(0), T(0), T(2), T(0), T(0), T(-1)};
    const std::vector<T> cp_expected{T(0), T(0), T(-4), T(0), T(0), T(1)};
    auto expect = [&](const std::vector<T>& got, const std::vector<T>& want, const std::string& what) {
        bool ok = got.size() == want.size();
        double worst = ok ? 0.0 : 1.0;
        for (std::size_t i = 0; ok && i < want.size(); ++i) {
            worst = std::max(worst, defect(got[i], want[i]));
            ok = same(got[i], want[i]);
        }
        t.record(ok, worst, what);
    };
    const LatticeState<T> a{Family::Product, 2, std::vector<T>(5, T(1))};
    const LatticeState<T> b{Family::Sum, 2, std::vector<T>(4, T(1))};
    const auto sa = compute_moments(lax_matrix(a), frc_table_depth(FrcKind::D, 4, 2));
    const auto sb = compute_moments(lax_matrix(b), frc_table_depth(FrcKind::CTilde, 3, 2));
    expect(compute_frc(sa, FrcKind::C, 4).values, c_expected, "C for unit a");
    expect(compute_frc(sa, FrcKind::D, 4).values, d_expected, "D for unit a");
    expect(compute_frc(sb, FrcKind::CTilde, 3).values, c_expected, "C_tilde for unit b");
    expect(charpoly(lax_matrix(a)).coeffs, cp_expected, "charpoly L1_4");
    expect(charpoly(lax_matrix(b)).coeffs, cp_expected, "charpoly L2_3");
    return t.finish("worked_example", backend_name<T>(), 5);
}

template <class T>
CheckResult check_frc_charpoly(const VerifyOptions& o, Rng& rng) {
    Tally t;
    int total = 0;
    for (int c = 0; c < o.cases; ++c, ++total) {
        const int p = uniform_int(rng, 2, 3);
        const int n = uniform_int(rng, 1, is_exact_v<T> ? 6 : 4);
        const auto a = random_state<T>(rng, Family::Product, p, n + 1, true);
        const int extra = 10;
        const auto table = compute_moments(lax_matrix(a), frc_table_depth(FrcKind::C, n, p, extra));
        const auto frc = compute_frc(table, FrcKind::C, n);
        const auto poly = charpoly(lax_matrix(a));
        bool ok = poly.coeffs.size() == frc.values.size();
        double worst = 0.0;
        for (std::size_t i = 0; ok && i < frc.values.size(); ++i) {
            worst = std::max(worst, defect(frc.values[i], T(-poly.coeffs[i])));
            ok = same(frc.values[i], T(-poly.coeffs[i]), 1e-7);
        }
        const auto violations = frc_recurrence_violations(table, frc, extra);
        ok = ok && violations.empty();
        if constexpr (is_exact_v<T>) ok = ok && minimal_rank_check(table, n).ok;
        t.record(ok, worst, describe(a));
    }
    return t.finish("frc_charpoly", backend_name<T>(), total);
}

// Long double RK4 so that the halving test measures truncation error and
// not binary64 roundoff.
CheckResult check_first_integrals(const VerifyOptions&, Rng&) {
    using F = long double;
    Tally t;
    const LatticeState<F> b{Family::Sum, 2, {1, 1, 1, 1}};
    const auto coarse = monitor_integrals(rk4_integrate<F>(b, 1, 1e-3L, {.accumulate = true}), example_monitors<F>());
    const auto fine = monitor_integrals(rk4_integrate<F>(b, 1, 5e-4L, {.accumulate = true}), example_monitors<F>());
    int total = 0;
    for (std::size_t i = 0; i < coarse.size(); ++i, ++total) {
        const double limit = coarse[i].name == "J1" ? 1e-7 : 1e-8;
        const double floor = 100 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::fabs(coarse[i].initial));
        bool ok = coarse[i].drift <= limit;
        if (coarse[i].drift > floor) ok = ok && coarse[i].drift >= 10 * fine[i].drift;
        t.record(ok, coarse[i].drift, coarse[i].name + " drift");
    }
    const LatticeState<F> witness{Family::Sum, 2, {1, 2, 3, 4}};
    const auto n1 = verify_d_tilde_nonconstancy(rk4_integrate<F>(witness, 1, 1e-3L));
    const auto n2 = verify_d_tilde_nonconstancy(rk4_integrate<F>(witness, 1, 5e-4L));
    const double spread = std::fabs(n1.d2_drift - n2.d2_drift) / n1.d2_drift;
    t.record(n1.d2_moves && n2.d2_moves && spread < 1e-6 && n1.d5_conserved, spread,
             "D_tilde_2 nonconstancy witness");
    return t.finish("first_integrals", "float64", total + 1);
}

CheckResult check_s31_identity(const VerifyOptions& o, Rng& rng) {
    Tally t;
    int total = 0;
    for (int c = 0; c < o.cases; ++c, ++total) {
        const auto a = random_state<Rational>(rng, Family::Product, 2, 5, true);
        const auto rep = verify_s31_identity(a);
        t.record(rep.identity_ok && rep.tilde_ok && rep.frc_ok, to_double(scalar_abs(Rational(rep.s31 - rep.rhs))),
                 describe(a.coeffs));
    }
    const LatticeState<Rational> spot{Family::Product, 2, {2, 3, 5, 7, 11}};
    const auto rep = verify_s31_identity(spot);
    t.record(rep.identity_ok && rep.s31 == 6, to_double(scalar_abs(Rational(rep.s31 - 6))), "a=(2,3,5,7,11)");
    return t.finish("s31_identity", "rational", total + 1);
}

CheckResult check_neumann(const VerifyOptions& o, Rng& rng) {
    Tally t;
    std::uniform_real_distribution<double> entry(-1.0, 1.0);
    int total = 0;
    for (int c = 0; c < 2 * o.cases; ++c, ++total) {
        const std::size_t n = static_cast<std::size_t>(uniform_int(rng, 4, 10));
        const std::size_t lower = static_cast<std::size_t>(uniform_int(rng, 1, 3));
        const std::size_t upper = static_cast<std::size_t>(uniform_int(rng, 1, 3));
        BandMatrix<double> m(n, lower, upper);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = (i > lower ? i - lower : 0); j < n && j <= i + upper; ++j)
                m.set(i, j, j == i + upper ? 1.0 : entry(rng));
        const double norm = m.row_sum_norm();
        const double lambda = (uniform_int(rng, 0, 1) ? 1.0 : -1.0) * norm * (2.0 + entry(rng) + 1.0);
        const int terms = uniform_int(rng, 3, 20);
        const int row = uniform_int(rng, 1, int(upper));
        const int col = uniform_int(rng, 1, int(lower));
        const auto table = compute_moments(m, terms);
        const double exact = weyl_entry(m, lambda, row, col);
        const double partial = neumann_partial_sum(table, lambda, row, col, terms);
        const double bound = neumann_tail_bound(norm, lambda, terms);
        const double gap = std::fabs(exact - partial);
        t.record(gap <= bound * (1 + 1e-12) + 1e-15, gap / std::max(bound, 1e-300), "random band matrix");
    }
    return t.finish("neumann", "float64", total);
}

using CheckFn = std::function<CheckResult(const VerifyOptions&, Rng&)>;

struct NamedCheck {
    std::string_view name;
    CheckFn exact;
    CheckFn floating;
};

const std::vector<NamedCheck>& registry() {
    static const std::vector<NamedCheck> checks = {
        {"lax_pair", check_lax_pair<Rational>, check_lax_pair<double>},
        {"reconstruction", check_reconstruction<Rational>, check_reconstruction<double>},
        {"determinants", check_determinants<Rational>, check_determinants<double>},
        {"moment_evolution", check_moment_evolution, check_moment_evolution},
        {"cauchy_pipeline", check_cauchy_pipeline, check_cauchy_pipeline},
        {"commuting_square", check_commuting_square<Rational>, check_commuting_square<double>},
        {"determinant_transport", check_determinant_transport, check_determinant_transport},
        {"worked_example", check_worked_example<Rational>, check_worked_example<double>},
        {"frc_charpoly", check_frc_charpoly<Rational>, check_frc_charpoly<double>},
        {"first_integrals", check_first_integrals, check_first_integrals},
        {"s31_identity", check_s31_identity, check_s31_identity},
        {"neumann", check_neumann, check_neumann},
    };
    return checks;
}

std::vector<std::string_view> split_suite(std::string_view suite) {
    std::vector<std::string_view> out;
    while (!suite.empty()) {
        const auto comma = suite.find(',');
        std::string_view part = suite.substr(0, comma);
        if (part.empty()) fail(ErrorKind::InvalidArgument, "verify: empty check name in suite list");
        out.push_back(part);
        if (comma == std::string_view::npos) break;
        suite.remove_prefix(comma + 1);
    }
    return out;
}

}  // namespace

std::vector<std::string_view> verify_check_names() {
    std::vector<std::string_view> names;
    for (const auto& c : registry()) names.push_back(c.name);
    return names;
}

std::vector<CheckResult> run_verify(std::string_view suite, const VerifyOptions& options) {
    if (options.cases < 1) fail(ErrorKind::InvalidArgument, "verify: need at least one case per check");
    std::vector<const NamedCheck*> selected;
    for (std::string_view part : split_suite(suite)) {
        if (part == "all") {
            for (const auto& c : registry()) selected.push_back(&c);
            continue;
        }
        auto it = std::find_if(registry().begin(), registry().end(), [&](const NamedCheck& c) { return c.name == part; });
        if (it == registry().end()) fail(ErrorKind::InvalidArgument, "verify: unknown check '" + std::string(part) + "'");
        selected.push_back(&*it);
    }
    if (selected.empty()) fail(ErrorKind::InvalidArgument, "verify: empty suite");

    std::vector<CheckResult> results;
    for (std::size_t i = 0; i < selected.size(); ++i) {
        // Each check gets its own stream so results do not depend on the selection.
        Rng rng(options.seed + 7919 * static_cast<std::uint64_t>(selected[i] - registry().data()));
        const auto& fn = options.backend == Backend::ExactRational ? selected[i]->exact : selected[i]->floating;
        try {
            results.push_back(fn(options, rng));
        } catch (const Error& e) {
            results.push_back({std::string(selected[i]->name), false,
                               options.backend == Backend::ExactRational ? "rational" : "float64", 0.0,
                               std::string(to_string(e.kind())) + ": " + e.what()});
        }
    }
    return results;
}

}  // namespace bogolat
