#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "bogolat/flow.hpp"
#include "bogolat/invariants.hpp"
#include "bogolat/lattice.hpp"
#include "bogolat/miura.hpp"
#include "bogolat/moments.hpp"
#include "support.hpp"

using namespace bogolat;
namespace ts = testing_support;

namespace {

ErrorKind kind_of(auto&& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.kind();
    }
    FAIL("no error raised");
    return ErrorKind::InvalidArgument;
}

// Evaluating the polynomial against det(x I - M) at a few integers checks
// the coefficients without either charpoly algorithm.
Rational charpoly_at(const CharPoly<Rational>& poly, const Rational& x) {
    Rational v(1);
    for (const auto& c : poly.coeffs) v = v * x + c;
    return v;
}

Rational det_shifted(const DenseMatrix<Rational>& m, const Rational& x) {
    DenseMatrix<Rational> s(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) s(i, j) = (i == j ? x : Rational(0)) - m(i, j);
    return ts::det_reference(s);
}

}  // namespace

TEST_CASE("unit worked example") {
    const LatticeState<Rational> a{Family::Product, 2, std::vector<Rational>(5, Rational(1))};
    const auto sa = compute_moments(lax_matrix(a), frc_table_depth(FrcKind::D, 4, 2));
    CHECK(compute_frc(sa, FrcKind::C, 4).values == std::vector<Rational>{0, 0, 4, 0, 0, -1});
    CHECK(compute_frc(sa, FrcKind::D, 4).values == std::vector<Rational>{0, 0, 2, 0, 0, -1});
    const auto poly = charpoly(lax_matrix(a));
    CHECK(poly.degree == 6);
    CHECK(poly.coeffs == std::vector<Rational>{0, 0, -4, 0, 0, 1});

    const LatticeState<Rational> b{Family::Sum, 2, std::vector<Rational>(4, Rational(1))};
    const auto sb = compute_moments(lax_matrix(b), frc_table_depth(FrcKind::DTilde, 3, 2));
    CHECK(compute_frc(sb, FrcKind::CTilde, 3).values == std::vector<Rational>{0, 0, 4, 0, 0, -1});
    CHECK(charpoly(lax_matrix(b)).coeffs == poly.coeffs);
    CHECK(compute_frc(sb, FrcKind::DTilde, 3).values.size() == 6);

    CHECK(kind_of([&] { compute_frc(sa, FrcKind::CTilde, 4); }) == ErrorKind::InvalidArgument);
    CHECK(kind_of([&] { compute_frc(sa.truncated(4), FrcKind::C, 4); }) == ErrorKind::IndexBeyondTable);
}

TEST_CASE("FRC kind names") {
    for (FrcKind k : {FrcKind::C, FrcKind::D, FrcKind::CTilde, FrcKind::DTilde}) CHECK(frc_kind_from_string(to_string(k)) == k);
    CHECK_THROWS_AS(frc_kind_from_string("E"), Error);
}

TEST_CASE("characteristic polynomial: two algorithms and direct evaluation") {
    ts::Rng rng(61);
    for (int c = 0; c < 20; ++c) {
        const Family family = c % 2 ? Family::Sum : Family::Product;
        const auto s = ts::random_lattice<Rational>(rng, family, ts::pick(rng, 1, 3), ts::pick(rng, 1, 6));
        const auto m = lax_matrix(s);
        const auto dense = m.to_dense();
        const auto poly = charpoly(m);
        CHECK(poly.coeffs == charpoly_faddeev_leverrier(dense).coeffs);
        for (int x = -2; x <= 3; ++x) CHECK(charpoly_at(poly, Rational(x)) == det_shifted(dense, Rational(x)));
        CHECK(cayley_hamilton_residual(dense, poly) == 0);

        DenseMatrix<double> fd(dense.rows(), dense.cols());
        for (std::size_t i = 0; i < fd.rows(); ++i)
            for (std::size_t j = 0; j < fd.cols(); ++j) fd(i, j) = dense(i, j).convert_to<double>();
        const auto hp = charpoly_hessenberg(fd);
        REQUIRE(hp.coeffs.size() == poly.coeffs.size());
        double scale = 1.0;
        for (const auto& x : poly.coeffs) scale = std::max(scale, std::fabs(x.convert_to<double>()));
        for (std::size_t i = 0; i < hp.coeffs.size(); ++i)
            CHECK(std::fabs(hp.coeffs[i] - poly.coeffs[i].convert_to<double>()) <= 1e-9 * scale);
    }
}

TEST_CASE("C equals minus the characteristic polynomial, with overdetermination and minimality") {
    ts::Rng rng(67);
    for (int c = 0; c < 20; ++c) {
        const int p = ts::pick(rng, 1, 3);
        const int n = ts::pick(rng, 1, 6);
        const auto a = ts::random_lattice<Rational>(rng, Family::Product, p, n + 1);
        const auto table = compute_moments(lax_matrix(a), frc_table_depth(FrcKind::C, n, p, 10));
        const auto frc = compute_frc(table, FrcKind::C, n);
        const auto poly = charpoly(lax_matrix(a));
        REQUIRE(frc.values.size() == poly.coeffs.size());
        for (std::size_t i = 0; i < poly.coeffs.size(); ++i) CHECK(frc.values[i] == -poly.coeffs[i]);
        CHECK(frc_recurrence_violations(table, frc, 10).empty());
        const auto d = compute_frc(table, FrcKind::D, n);
        CHECK(frc_recurrence_violations(table, d, 10).empty());
        const auto rep = minimal_rank_check(table, n);
        CHECK(rep.ok);
        CHECK(rep.delta_rank == 0);

        // A perturbed recurrence is caught.
        auto wrong = frc;
        wrong.values.back() += 1;
        CHECK_FALSE(frc_recurrence_violations(table, wrong, 10).empty());
    }
    for (int c = 0; c < 10; ++c) {
        const int p = ts::pick(rng, 1, 3);
        const int n = ts::pick(rng, 1, 5);
        const auto b = ts::random_lattice<Rational>(rng, Family::Sum, p, n + 1);
        const int depth = std::max(frc_table_depth(FrcKind::CTilde, n, p, 10), frc_table_depth(FrcKind::DTilde, n, p, 10));
        const auto table = compute_moments(lax_matrix(b), depth);
        for (FrcKind k : {FrcKind::CTilde, FrcKind::DTilde}) {
            const auto x = compute_frc(table, k, n);
            CHECK(frc_recurrence_violations(table, x, 10).empty());
        }
        const auto ct = compute_frc(table, FrcKind::CTilde, n);
        const auto poly = charpoly(lax_matrix(b));
        for (std::size_t i = 0; i < poly.coeffs.size(); ++i) CHECK(ct.values[i] == -poly.coeffs[i]);
    }
}

TEST_CASE("an overstated size is rank deficient") {
    const LatticeState<Rational> a{Family::Product, 2, {2, 3, 5}};
    const auto table = compute_moments(lax_matrix(a), frc_table_depth(FrcKind::C, 4, 2, 4));
    CHECK(kind_of([&] { compute_frc(table, FrcKind::C, 4); }) == ErrorKind::RankDeficient);
    CHECK_FALSE(minimal_rank_check(table, 4).ok);
    CHECK(minimal_rank_check(table, 2).ok);
}

TEST_CASE("float FRC") {
    const LatticeState<double> a{Family::Product, 2, {0.5, 1.5, 1.0, 2.0, 0.75}};
    const auto table = compute_moments(lax_matrix(a), frc_table_depth(FrcKind::C, 4, 2, 5));
    const auto frc = compute_frc(table, FrcKind::C, 4);
    CHECK(frc.residual < 1e-9);
    const auto poly = charpoly(lax_matrix(a));
    for (std::size_t i = 0; i < poly.coeffs.size(); ++i) CHECK(frc.values[i] == doctest::Approx(-poly.coeffs[i]).scale(1.0));
    CHECK(frc_recurrence_violations(table, frc, 5).empty());
}

TEST_CASE("integral monitors along RK4 trajectories") {
    const LatticeState<double> b{Family::Sum, 2, {0.5, 1.0, 1.5, 0.75}};
    const auto plain = rk4_integrate<double>(b, 0.5, 1e-3);
    CHECK(kind_of([&] { monitor_integrals(plain, example_monitors<double>()); }) == ErrorKind::MissingAccumulators);

    const auto traj = rk4_integrate<double>(b, 0.5, 1e-3, {.accumulate = true});
    const auto ex = monitor_integrals(traj, example_monitors<double>());
    REQUIRE(ex.size() == 4);
    CHECK(ex[0].name == "I1");
    CHECK(ex[0].initial == doctest::Approx(3.75));
    CHECK(ex[1].initial == doctest::Approx(-0.375));
    for (const auto& m : ex) CHECK(m.drift < 1e-9);

    for (FrcKind k : {FrcKind::CTilde, FrcKind::DTilde}) {
        const auto r = monitor_integrals(traj, frc_monitors<double>(k, 2, 3));
        CHECK(r.size() == 6);
        for (const auto& m : r) {
            CAPTURE(m.name);
            if (k == FrcKind::DTilde && m.name == "D_tilde_2") continue;
            CHECK(m.drift < 1e-8);
        }
    }
    for (const auto& m : monitor_integrals(traj, charpoly_monitors<double>(Family::Sum, 2, 3))) CHECK(m.drift < 1e-9);

    const LatticeState<double> a{Family::Product, 3, {0.5, 1.5, 1.0, 2.0, 0.75, 1.25}};
    const auto ta = rk4_integrate<double>(a, 0.5, 1e-3);
    for (FrcKind k : {FrcKind::C, FrcKind::D})
        for (const auto& m : monitor_integrals(ta, frc_monitors<double>(k, 3, 5))) CHECK(m.drift < 1e-8);
    CHECK(kind_of([&] { monitor_integrals(ta, frc_monitors<double>(FrcKind::C, 3, 4)); }) == ErrorKind::DimensionMismatch);
}

TEST_CASE("D_tilde_2 is not conserved, D_tilde_5 is") {
    const LatticeState<long double> w{Family::Sum, 2, {1, 2, 3, 4}};
    const auto rep = verify_d_tilde_nonconstancy(rk4_integrate<long double>(w, 1, 1e-3L));
    CHECK(rep.d2_moves);
    CHECK(rep.d5_conserved);
    CHECK(rep.closed_form_gap < 1e-9);
    CHECK(kind_of([] { verify_d_tilde_nonconstancy(rk4_integrate<double>(LatticeState<double>{Family::Sum, 3, {1, 2, 3, 4}}, 0.1, 0.01)); }) ==
          ErrorKind::InvalidArgument);
}

TEST_CASE("third moment identity") {
    const auto rep = verify_s31_identity(LatticeState<Rational>{Family::Product, 2, {2, 3, 5, 7, 11}});
    CHECK(rep.s31 == 6);
    CHECK(rep.identity_ok);
    CHECK(rep.tilde_ok);
    CHECK(rep.frc_ok);
    ts::Rng rng(71);
    for (int c = 0; c < 20; ++c) {
        const auto a = ts::random_lattice<Rational>(rng, Family::Product, 2, 5);
        const auto r = verify_s31_identity(a);
        CHECK(r.identity_ok);
        CHECK(r.tilde_ok);
        CHECK(r.frc_ok);
        // S_3^1 straight from a dense cube.
        CHECK(r.s31 == ts::dense_power(ts::dense_l1(a.coeffs, 2), 3)(0, 0));
        CHECK(r.rhs == (a.coeffs[1] + a.coeffs[3]) * a.coeffs[0] - a.coeffs[0] * a.coeffs[3]);
    }
    CHECK_THROWS_AS(verify_s31_identity(LatticeState<Rational>{Family::Product, 2, {1, 2, 3}}), Error);
}
