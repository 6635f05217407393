#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "bogolat/lattice.hpp"
#include "bogolat/moments.hpp"
#include "support.hpp"

using namespace bogolat;
namespace ts = testing_support;

namespace {

// `pure` leaves every superdiagonal except the unit r-th one empty.
BandMatrix<Rational> random_band(ts::Rng& rng, std::size_t n, std::size_t lower, std::size_t upper, bool pure = false) {
    BandMatrix<Rational> m(n, lower, upper);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = (i > lower ? i - lower : 0); j < n && j <= i + upper; ++j) {
            if (j == i + upper) m.set(i, j, Rational(1));
            else if (!pure || j <= i) m.set(i, j, ts::small_rational(rng));
        }
    return m;
}

LatticeState<Rational> a5() {
    return {Family::Product, 2, {2, 3, 5, 7, 11}};
}

}  // namespace

TEST_CASE("moments agree with dense matrix powers") {
    ts::Rng rng(2024);
    for (int c = 0; c < 25; ++c) {
        const std::size_t lower = static_cast<std::size_t>(ts::pick(rng, 1, 3));
        const std::size_t upper = static_cast<std::size_t>(ts::pick(rng, 1, 3));
        const std::size_t n = static_cast<std::size_t>(ts::pick(rng, int(std::max(lower, upper)) + 1, 9));
        const auto m = random_band(rng, n, lower, upper);
        const int kmax = ts::pick(rng, 0, 7);
        const auto table = compute_moments(m, kmax);
        REQUIRE(table.r() == int(upper));
        REQUIRE(table.q() == int(lower));
        const auto dense = m.to_dense();
        for (int k = 0; k <= kmax; ++k) {
            const auto pk = ts::dense_power(dense, k);
            for (int r = 1; r <= table.r(); ++r)
                for (int q = 1; q <= table.q(); ++q) CHECK(table(k, r, q) == pk(r - 1, q - 1));
        }
    }
}

TEST_CASE("zeroth moment is the identity block") {
    const auto t = compute_moments(build_l2(LatticeState<Rational>{Family::Sum, 3, {1, 2, 3, 4}}, 7), 0);
    for (int n = 1; n <= 3; ++n) CHECK(t(0, 1, n) == (n == 1 ? 1 : 0));
}

TEST_CASE("spot moments of the p=2 product example") {
    const auto t = compute_moments(lax_matrix(a5()), 6);
    CHECK(t(1, 2, 1) == 2);
    CHECK(t(3, 1, 1) == 6);
    CHECK(t(0, 2, 1) == 0);
    CHECK_THROWS_AS(t(7, 1, 1), Error);
    CHECK(t.truncated(3).max_index() == 3);
    CHECK_THROWS_AS(t.truncated(9), Error);
}

TEST_CASE("window bound: sections at least the bound agree, shorter ones are rejected") {
    ts::Rng rng(77);
    for (int c = 0; c < 12; ++c) {
        const int p = ts::pick(rng, 1, 3);
        const Family family = c % 2 ? Family::Sum : Family::Product;
        const int kmax = ts::pick(rng, 2, 10);
        const int r = family == Family::Product ? p : 1;
        const int q = family == Family::Product ? 1 : p;
        const std::size_t w = required_window(r, q, kmax);
        // A long window of a semi-infinite lattice: moments up to kmax must
        // not depend on where it is cut once the section reaches w.
        auto s = ts::random_lattice<Rational>(rng, family, p, int(w) + 12);
        s.boundary = Boundary::TruncatedSemiInfinite;
        const auto full = compute_moments(lax_matrix(s), kmax);
        const auto m = lax_matrix(s);
        BandMatrix<Rational> cut(w, m.lower(), m.upper());
        for (std::size_t i = 0; i < w; ++i)
            for (std::size_t j = (i > m.lower() ? i - m.lower() : 0); j < w && j <= i + m.upper(); ++j) cut.set(i, j, m.at(i, j));
        CHECK(compute_moments(cut, kmax, TruncationPolicy::SemiInfiniteWindow) == full);
        if (w > std::size_t(std::max(r, q))) {
            BandMatrix<Rational> shorter(w - 1, m.lower(), m.upper());
            for (std::size_t i = 0; i + 1 < w; ++i)
                for (std::size_t j = (i > m.lower() ? i - m.lower() : 0); j + 1 < w && j <= i + m.upper(); ++j)
                    shorter.set(i, j, m.at(i, j));
            CHECK_THROWS_AS(compute_moments(shorter, kmax, TruncationPolicy::SemiInfiniteWindow), Error);
        }
    }
}

TEST_CASE("the window bound is tight") {
    // One size below the bound, some moment really does change.
    ts::Rng rng(5);
    for (int kmax : {3, 6, 9}) {
        LatticeState<Rational> s = ts::random_lattice<Rational>(rng, Family::Product, 2, 40, false);
        s.boundary = Boundary::TruncatedSemiInfinite;
        const auto m = lax_matrix(s);
        const std::size_t w = required_window(2, 1, kmax);
        BandMatrix<Rational> cut(w - 1, m.lower(), m.upper());
        for (std::size_t i = 0; i + 1 < w; ++i)
            for (std::size_t j = (i > m.lower() ? i - m.lower() : 0); j + 1 < w && j <= i + m.upper(); ++j) cut.set(i, j, m.at(i, j));
        CHECK_FALSE(compute_moments(cut, kmax) == compute_moments(m, kmax));
    }
}

TEST_CASE("normalization holds for band operators and catches a forced defect") {
    ts::Rng rng(9);
    for (int c = 0; c < 30; ++c) {
        const std::size_t lower = std::size_t(ts::pick(rng, 1, 5));
        const std::size_t upper = std::size_t(ts::pick(rng, 1, 3));
        CAPTURE(lower);
        CAPTURE(upper);
        CHECK(check_normalization(compute_moments(random_band(rng, 10, lower, upper, true), 6)).empty());
        // With q <= r the condition only concerns S_0 and holds for any band.
        if (lower <= upper) CHECK(check_normalization(compute_moments(random_band(rng, 10, lower, upper), 6)).empty());
    }
    // For q > r >= 2 it constrains the superdiagonals below the r-th:
    // S_1^{2,3} is the (1,2) entry of M.
    BandMatrix<Rational> m = random_band(rng, 8, 3, 2, true);
    CHECK(check_normalization(compute_moments(m, 4)).empty());
    m.set(1, 2, Rational(5));
    const auto defect = check_normalization(compute_moments(m, 4));
    REQUIRE(defect.size() == 1);
    CHECK(defect[0] == MomentIndex{1, 2, 3});
    auto t = compute_moments(lax_matrix(LatticeState<Rational>{Family::Sum, 2, {1, 2, 3}}), 4);
    t(0, 1, 2) = 1;
    const auto bad = check_normalization(t);
    REQUIRE(bad.size() == 1);
    CHECK(bad[0] == MomentIndex{0, 1, 2});
}

TEST_CASE("sparsity patterns of L1 and L2 tables") {
    ts::Rng rng(10);
    for (int c = 0; c < 20; ++c) {
        const int p = ts::pick(rng, 1, 4);
        const auto a = ts::random_lattice<Rational>(rng, Family::Product, p, ts::pick(rng, p, 8));
        const auto b = ts::random_lattice<Rational>(rng, Family::Sum, p, ts::pick(rng, 1, 8));
        const auto ta = compute_moments(lax_matrix(a), 14);
        const auto tb = compute_moments(lax_matrix(b), 14);
        CHECK(check_sparsity(ta, SparsityKind::L1Type).empty());
        CHECK(check_sparsity(ta, SparsityKind::General).empty());
        CHECK(check_sparsity(tb, SparsityKind::L2Type).empty());
        CHECK(check_sparsity(tb, SparsityKind::General).empty());
    }
    // A dense 2/2 band matrix has moments off the two-diagonal pattern.
    const auto dense = random_band(rng, 8, 2, 2);
    CHECK_FALSE(check_sparsity(compute_moments(dense, 6), SparsityKind::General).empty());
    auto ta = compute_moments(lax_matrix(a5()), 6);
    ta(1, 1, 1) = 3;
    const auto off = check_sparsity(ta, SparsityKind::L1Type);
    REQUIRE(off.size() == 1);
    CHECK(off[0] == MomentIndex{1, 1, 1});
    CHECK_THROWS_AS(check_sparsity(ta, SparsityKind::L2Type), Error);
}

TEST_CASE("Weyl entries and the Neumann series") {
    ts::Rng rng(12);
    BandMatrix<double> m(6, 2, 1);
    for (std::size_t i = 0; i < 6; ++i)
        for (std::size_t j = (i > 2 ? i - 2 : 0); j < 6 && j <= i + 1; ++j) m.set(i, j, j == i + 1 ? 1.0 : ts::uniform(rng, -1, 1));
    const double norm = m.row_sum_norm();
    CHECK_THROWS_AS(weyl_entry(m, 0.5 * norm, 1, 1), Error);
    CHECK_THROWS_AS(weyl_entry(m, 3 * norm, 0, 1), Error);

    const double lambda = 2 * norm;
    const auto table = compute_moments(m, 40);
    double previous_gap = INFINITY;
    for (int k : {2, 5, 10, 20, 40}) {
        const double gap = std::fabs(weyl_entry(m, lambda, 1, 2) - neumann_partial_sum(table, lambda, 1, 2, k));
        CHECK(gap <= neumann_tail_bound(norm, lambda, k) * (1 + 1e-12) + 1e-16);
        CHECK(gap <= previous_gap + 1e-16);
        previous_gap = gap;
    }
    CHECK_THROWS_AS(neumann_partial_sum(table, lambda, 1, 1, 41), Error);
    CHECK(std::isinf(neumann_tail_bound(norm, norm, 3)));
}
