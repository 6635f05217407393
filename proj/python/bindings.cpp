#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>
#include <vector>

#include "bogolat/flow.hpp"
#include "bogolat/hankel.hpp"
#include "bogolat/invariants.hpp"
#include "bogolat/lattice.hpp"
#include "bogolat/miura.hpp"
#include "bogolat/moments.hpp"
#include "bogolat/verify.hpp"

namespace py = pybind11;
using namespace bogolat;

namespace {

// Exact values travel as decimal or p/q strings; the Python layer turns
// them into fractions.Fraction.
using Strings = std::vector<std::string>;
using Nested = std::vector<std::vector<std::vector<std::string>>>;

Family family_of(const std::string& name) {
    if (name == "a" || name == "product") return Family::Product;
    if (name == "b" || name == "sum") return Family::Sum;
    throw py::value_error("family must be 'a' or 'b'");
}

template <class T>
LatticeState<T> state_of(const std::string& family, int p, const std::vector<T>& coeffs, bool window) {
    LatticeState<T> s{family_of(family), p, coeffs, window ? Boundary::TruncatedSemiInfinite : Boundary::OpenEnd};
    s.validate();
    return s;
}

std::vector<Rational> parse_all(const Strings& xs) {
    std::vector<Rational> out;
    out.reserve(xs.size());
    for (const auto& x : xs) out.push_back(parse_rational(x));
    return out;
}

Strings format_all(const std::vector<Rational>& xs) {
    Strings out;
    for (const auto& x : xs) out.push_back(to_string(x));
    return out;
}

template <class T, class F>
auto nested(const MomentTable<T>& t, F fmt) {
    std::vector<std::vector<std::vector<decltype(fmt(t(0, 1, 1)))>>> out(std::size_t(t.max_index() + 1));
    for (int k = 0; k <= t.max_index(); ++k) {
        out[std::size_t(k)].resize(std::size_t(t.r()));
        for (int m = 1; m <= t.r(); ++m)
            for (int n = 1; n <= t.q(); ++n) out[std::size_t(k)][std::size_t(m - 1)].push_back(fmt(t(k, m, n)));
    }
    return out;
}

template <class T>
MomentTable<T> table_of(const std::vector<std::vector<std::vector<T>>>& data) {
    if (data.empty() || data[0].empty() || data[0][0].empty()) throw py::value_error("moment array must be non-empty");
    const int rows = int(data[0].size());
    const int cols = int(data[0][0].size());
    MomentTable<T> t(rows, cols, int(data.size()) - 1);
    for (std::size_t k = 0; k < data.size(); ++k) {
        if (int(data[k].size()) != rows) throw py::value_error("ragged moment array");
        for (int m = 0; m < rows; ++m) {
            if (int(data[k][std::size_t(m)].size()) != cols) throw py::value_error("ragged moment array");
            for (int n = 0; n < cols; ++n) t(int(k), m + 1, n + 1) = data[k][std::size_t(m)][std::size_t(n)];
        }
    }
    return t;
}

py::dict trajectory_dict(const Trajectory<double>& t) {
    py::dict d;
    d["times"] = t.times;
    d["values"] = t.values;
    if (t.has_integrals()) d["integrals"] = t.integrals;
    d["diagnostics"] = t.diagnostics;
    return d;
}

}  // namespace

PYBIND11_MODULE(_bogolat, m) {
    m.doc() = "Bogoyavlensky lattices through their moment sequences";

    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const Error& e) {
            const std::string kind(to_string(e.kind()));
            PyErr_SetString(PyExc_ValueError, (kind + ": " + e.what()).c_str());
        }
    });

    m.def("lattice_rhs", [](const std::string& family, int p, const std::vector<double>& x) {
        return lattice_rhs(state_of(family, p, x, false));
    }, py::arg("family"), py::arg("p"), py::arg("coeffs"));

    m.def("lattice_rhs_exact", [](const std::string& family, int p, const Strings& x) {
        return format_all(lattice_rhs(state_of(family, p, parse_all(x), false)));
    }, py::arg("family"), py::arg("p"), py::arg("coeffs"));

    m.def("lax_residual_exact", [](const std::string& family, int p, const Strings& x, bool window) {
        return to_string(lax_residual(state_of(family, p, parse_all(x), window)));
    }, py::arg("family"), py::arg("p"), py::arg("coeffs"), py::arg("window") = false);

    m.def("moments", [](const std::string& family, int p, const std::vector<double>& x, int max_index, bool window) {
        return nested(compute_moments(lax_matrix(state_of(family, p, x, window)), max_index), [](double v) { return v; });
    }, py::arg("family"), py::arg("p"), py::arg("coeffs"), py::arg("max_index"), py::arg("window") = false);

    m.def("moments_exact", [](const std::string& family, int p, const Strings& x, int max_index, bool window) {
        return nested(compute_moments(lax_matrix(state_of(family, p, parse_all(x), window)), max_index),
                      [](const Rational& v) { return to_string(v); });
    }, py::arg("family"), py::arg("p"), py::arg("coeffs"), py::arg("max_index"), py::arg("window") = false);

    m.def("delta_ladder_exact", [](const Nested& table, int max_k) {
        std::vector<std::vector<std::vector<Rational>>> parsed;
        for (const auto& row : table) {
            parsed.emplace_back();
            for (const auto& r : row) parsed.back().push_back(parse_all(r));
        }
        const auto ladder = delta_ladder(table_of(parsed), max_k);
        Strings out;
        for (int k = -1; k <= max_k; ++k) out.push_back(to_string(ladder[k]));
        return out;
    }, py::arg("moments"), py::arg("max_k"), "Delta_{-1}..Delta_{max_k} of the structured Hankel array");

    m.def("reconstruct_exact", [](const Nested& table, int count) {
        std::vector<std::vector<std::vector<Rational>>> parsed;
        for (const auto& row : table) {
            parsed.emplace_back();
            for (const auto& r : row) parsed.back().push_back(parse_all(r));
        }
        const auto t = table_of(parsed);
        const auto kind = t.q() == 1 ? SparsityKind::L1Type : SparsityKind::L2Type;
        const auto s = reconstruct_sparse_lattice(t, kind, count);
        return py::make_tuple(s.family == Family::Product ? "a" : "b", s.order, format_all(s.coeffs));
    }, py::arg("moments"), py::arg("count"));

    m.def("reconstruct", [](const std::vector<std::vector<std::vector<double>>>& table, int count) {
        const auto t = table_of(table);
        const auto kind = t.q() == 1 ? SparsityKind::L1Type : SparsityKind::L2Type;
        const auto s = reconstruct_sparse_lattice(t, kind, count);
        return py::make_tuple(s.family == Family::Product ? "a" : "b", s.order, s.coeffs);
    }, py::arg("moments"), py::arg("count"));

    m.def("rk4", [](const std::string& family, int p, const std::vector<double>& x, double t_end, double dt,
                    int record_every, bool accumulate, bool window) {
        Rk4Options o;
        o.record_every = record_every;
        o.accumulate = accumulate;
        return trajectory_dict(rk4_integrate<double>(state_of(family, p, x, window), t_end, dt, o));
    }, py::arg("family"), py::arg("p"), py::arg("coeffs"), py::arg("t_end"), py::arg("dt"), py::arg("record_every") = 1,
       py::arg("accumulate") = false, py::arg("window") = false);

    m.def("solve_cauchy", [](const std::string& family, int p, const std::vector<double>& x, const std::vector<double>& grid,
                             int depth, int max_terms, bool window) {
        SeriesOptions o;
        o.max_terms = max_terms;
        return trajectory_dict(solve_cauchy<double>(state_of(family, p, x, window), grid, depth, o));
    }, py::arg("family"), py::arg("p"), py::arg("coeffs"), py::arg("times"), py::arg("depth"), py::arg("max_terms") = 60,
       py::arg("window") = false);

    m.def("miura_forward_exact", [](int p, const Strings& a) {
        return format_all(miura_forward(state_of("a", p, parse_all(a), false)).coeffs);
    }, py::arg("p"), py::arg("coeffs"));

    m.def("miura_inverse_exact", [](int p, const Strings& b, const Strings& seeds) {
        const auto head = parse_all(seeds);
        MiuraSeeds<Rational>{head}.validate(p);
        return format_all(miura_inverse(state_of("b", p, parse_all(b), false), std::span<const Rational>(head)).coeffs);
    }, py::arg("p"), py::arg("coeffs"), py::arg("seeds"));

    m.def("frc_exact", [](const std::string& kind, int p, const Strings& x) {
        const FrcKind k = frc_kind_from_string(kind);
        const bool tilde = k == FrcKind::CTilde || k == FrcKind::DTilde;
        const auto s = state_of(tilde ? "b" : "a", p, parse_all(x), false);
        const int n = int(s.count()) - 1;
        return format_all(compute_frc(compute_moments(lax_matrix(s), frc_table_depth(k, n, p)), k, n).values);
    }, py::arg("kind"), py::arg("p"), py::arg("coeffs"), "FRC set of a finite lattice with N + 1 coefficients");

    m.def("charpoly_exact", [](const std::string& family, int p, const Strings& x) {
        return format_all(charpoly(lax_matrix(state_of(family, p, parse_all(x), false))).coeffs);
    }, py::arg("family"), py::arg("p"), py::arg("coeffs"), "c_0..c_{deg-1} of lambda^deg + c_0 lambda^{deg-1} + ...");

    m.def("verify", [](const std::string& suite, const std::string& backend, int cases, std::uint64_t seed) {
        VerifyOptions o;
        if (backend == "float64") o.backend = Backend::Float64;
        else if (backend != "rational" && backend != "exact") throw py::value_error("backend must be 'rational' or 'float64'");
        o.cases = cases;
        o.seed = seed;
        py::list out;
        for (const auto& r : run_verify(suite, o)) {
            py::dict d;
            d["name"] = r.name;
            d["passed"] = r.passed;
            d["backend"] = r.backend;
            d["measure"] = r.measure;
            d["detail"] = r.detail;
            out.append(d);
        }
        return out;
    }, py::arg("suite") = "all", py::arg("backend") = "rational", py::arg("cases") = 10,
       py::arg("seed") = VerifyOptions{}.seed);
}
