#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "bogolat/flow.hpp"
#include "bogolat/hankel.hpp"
#include "bogolat/invariants.hpp"
#include "bogolat/miura.hpp"
#include "bogolat/moments.hpp"
#include "bogolat/verify.hpp"
#include "scenario.hpp"

namespace bogolat::cli {

namespace {

using nlohmann::json;
namespace fs = std::filesystem;

template <class T>
std::string text(const T& x) {
    if constexpr (is_exact_v<T>) return to_string(x);
    else return to_string(static_cast<double>(x));
}

template <class T>
json value(const T& x) {
    if constexpr (is_exact_v<T>) return to_string(x);
    else {
        const double d = static_cast<double>(x);
        return std::isfinite(d) ? json(d) : json(nullptr);
    }
}

template <class T>
json values(const std::vector<T>& xs) {
    json out = json::array();
    for (const auto& x : xs) out.push_back(value(x));
    return out;
}

class Output {
public:
    explicit Output(fs::path dir) : dir_(std::move(dir)) {}

    void write(const std::string& name, const std::string& body) {
        fs::create_directories(dir_);
        std::ofstream f(dir_ / name, std::ios::binary);
        if (!f) throw std::runtime_error("cannot write " + (dir_ / name).string());
        f << body;
        files_.push_back(name);
    }

    void write_json(const std::string& name, const json& doc) { write(name, doc.dump(2) + "\n"); }

    const std::vector<std::string>& files() const { return files_; }

private:
    fs::path dir_;
    std::vector<std::string> files_;
};

std::string backend_name(Backend b) {
    return b == Backend::ExactRational ? "rational" : "float64";
}

long long steps_between(const Rational& a, const Rational& b) {
    return numerator(Rational(a / b)).convert_to<long long>();
}

std::vector<Rational> output_grid(const ScenarioConfig& c) {
    std::vector<Rational> grid;
    const long long n = steps_between(c.t_end, c.output_dt);
    for (long long k = 0; k <= n; ++k) grid.push_back(c.output_dt * k);
    return grid;
}

template <class T>
std::vector<T> grid_as(const std::vector<Rational>& grid) {
    if constexpr (is_exact_v<T>) return grid;
    else {
        std::vector<T> out;
        for (const auto& t : grid) out.push_back(static_cast<T>(t.convert_to<double>()));
        return out;
    }
}

Trajectory<double> run_rk4(const LatticeState<double>& s, const ScenarioConfig& c, bool accumulate, bool estimate) {
    Rk4Options o;
    o.accumulate = accumulate;
    o.estimate_error = estimate;
    o.record_every = static_cast<int>(steps_between(c.output_dt, c.dt));
    return rk4_integrate<double>(s, c.t_end.convert_to<double>(), c.dt.convert_to<double>(), o);
}

SeriesOptions series_options(const ScenarioConfig& c) {
    SeriesOptions o;
    o.max_terms = c.series_terms_max;
    return o;
}

template <class T>
Trajectory<T> run_series(const ScenarioConfig& c, int depth) {
    const auto grid = grid_as<T>(output_grid(c));
    return solve_cauchy<T>(c.state<T>(), grid, depth, series_options(c));
}

template <class T>
std::string trajectory_csv(const Trajectory<T>& traj) {
    std::ostringstream s;
    s << "t,index,value\n";
    for (std::size_t i = 0; i < traj.samples(); ++i)
        for (std::size_t j = 0; j < traj.values[i].size(); ++j)
            s << text(traj.times[i]) << ',' << j << ',' << text(traj.values[i][j]) << '\n';
    return s.str();
}

template <class T>
void append_moments(std::ostringstream& s, const std::string& t, const MomentTable<T>& table, int depth) {
    for (int k = 0; k <= depth; ++k)
        for (int m = 1; m <= table.r(); ++m)
            for (int n = 1; n <= table.q(); ++n) s << t << ',' << k << ',' << m << ',' << n << ',' << text(table(k, m, n)) << '\n';
}

// Series runs write the evolved moments themselves; RK4 runs write the
// moments of the instantaneous Lax matrix.
template <class T>
std::string moments_csv_series(const ScenarioConfig& c) {
    const int depth = c.moment_depth;
    const int stride = c.p + 1;
    const auto base = compute_moments(lax_matrix(c.state<T>()), depth + stride * c.series_terms_max);
    std::ostringstream s;
    s << "t,k,m,n,value\n";
    const auto grid = grid_as<T>(output_grid(c));
    for (const T& t : grid) {
        const auto eval = evolve_moments_series(base, c.family, t, depth, series_options(c));
        append_moments(s, text(t), eval.table, depth);
    }
    return s.str();
}

template <class T>
std::string moments_csv_states(const Trajectory<T>& traj, int depth) {
    std::ostringstream s;
    s << "t,k,m,n,value\n";
    for (std::size_t i = 0; i < traj.samples(); ++i)
        append_moments(s, text(traj.times[i]), compute_moments(lax_matrix(traj.state(i)), depth), depth);
    return s.str();
}

void require_finite(const ScenarioConfig& c, const std::string& what) {
    if (!c.finite) throw ConfigError("ConfigError", what + " needs a finite lattice (size {\"N\": n})");
}

int frc_n(const ScenarioConfig& c) {
    return c.n();
}

std::vector<FrcKind> frc_kinds(Family family) {
    return family == Family::Product ? std::vector<FrcKind>{FrcKind::C, FrcKind::D}
                                     : std::vector<FrcKind>{FrcKind::CTilde, FrcKind::DTilde};
}

template <class T>
bool close_to(const T& a, const T& b) {
    if constexpr (is_exact_v<T>) return a == b;
    else return std::fabs(a - b) <= 1e-9 * std::max({1.0, std::fabs(a), std::fabs(b)});
}

template <class T>
json frc_report(const ScenarioConfig& c) {
    const int n = frc_n(c);
    const int extra = 10;
    const auto state = c.state<T>();
    int depth = 0;
    for (FrcKind k : frc_kinds(c.family)) depth = std::max(depth, frc_table_depth(k, n, c.p, extra));
    const auto table = compute_moments(lax_matrix(state), depth);
    const auto poly = charpoly(lax_matrix(state));

    json sets = json::object();
    bool c_matches = false;
    for (FrcKind kind : frc_kinds(c.family)) {
        const auto frc = compute_frc(table, kind, n);
        const auto bad = frc_recurrence_violations(table, frc, extra);
        json positions = json::array();
        for (const auto& pos : bad) positions.push_back({pos.i, pos.j});
        sets[std::string(to_string(kind))] = {
            {"values", values(frc.values)},
            {"residual", frc.residual},
            {"overdetermination", {{"extra", extra}, {"violations", positions}, {"ok", bad.empty()}}},
        };
        if (kind == FrcKind::C || kind == FrcKind::CTilde) {
            c_matches = frc.values.size() == poly.coeffs.size();
            for (std::size_t i = 0; c_matches && i < poly.coeffs.size(); ++i)
                c_matches = close_to(frc.values[i], T(-poly.coeffs[i]));
        }
    }
    // The rank condition is an exact statement; the initial data are exact.
    const auto exact_state = c.state<Rational>();
    const auto exact_table = compute_moments(lax_matrix(exact_state), alpha_depth(c.family == Family::Product ? c.p : 1,
                                                                                  c.family == Family::Product ? 1 : c.p,
                                                                                  static_cast<int>(default_lax_size(exact_state))));
    const auto rank = minimal_rank_check(exact_table, n);
    return {
        {"family", c.family == Family::Product ? "a" : "b"},
        {"p", c.p},
        {"N", n},
        {"backend", backend_name(c.backend)},
        {"sets", sets},
        {"charpoly", {{"degree", poly.degree}, {"coeffs", values(poly.coeffs)}}},
        {"c_equals_minus_charpoly", c_matches},
        {"minimal_rank", {{"ok", rank.ok}, {"delta_R_minus_1", to_string(rank.delta_rank_minus_one)}, {"delta_R", to_string(rank.delta_rank)}}},
    };
}

json frc_report(const ScenarioConfig& c) {
    require_finite(c, "frc");
    return c.backend == Backend::ExactRational ? frc_report<Rational>(c) : frc_report<double>(c);
}

json monitor_json(const std::vector<MonitorResult>& results, double& worst) {
    json out = json::array();
    for (const auto& r : results) {
        out.push_back({{"name", r.name}, {"initial", value(r.initial)}, {"drift", value(r.drift)}});
        worst = std::max(worst, r.drift);
    }
    return out;
}

json integrals_report(const ScenarioConfig& c) {
    require_finite(c, "integrals");
    const int n = frc_n(c);
    const auto state = c.state<double>();
    const auto traj = run_rk4(state, c, true, false);

    std::vector<IntegralMonitor<double>> monitors;
    for (FrcKind kind : frc_kinds(c.family)) {
        auto m = frc_monitors<double>(kind, c.p, n);
        monitors.insert(monitors.end(), m.begin(), m.end());
    }
    const auto cp = charpoly_monitors<double>(c.family, c.p, n);
    monitors.insert(monitors.end(), cp.begin(), cp.end());
    const bool worked_example = c.family == Family::Sum && c.p == 2 && n == 3;
    if (worked_example) {
        const double a0 = c.seeds.empty() ? 1.0 : c.seeds.front().convert_to<double>();
        const auto ex = example_monitors<double>(a0);
        monitors.insert(monitors.end(), ex.begin(), ex.end());
    }
    double worst = 0.0;
    json doc = {
        {"family", c.family == Family::Product ? "a" : "b"},
        {"p", c.p},
        {"N", n},
        {"integrator", "rk4"},
        {"t_end", c.t_end.convert_to<double>()},
        {"dt", c.dt.convert_to<double>()},
        {"samples", traj.samples()},
    };
    doc["monitors"] = monitor_json(monitor_integrals(traj, monitors), worst);
    doc["max_drift"] = worst;
    if (worked_example) {
        const auto rep = verify_d_tilde_nonconstancy(traj);
        doc["d_tilde_nonconstancy"] = {{"D_tilde_2_drift", rep.d2_drift},
                                       {"D_tilde_5_drift", rep.d5_drift},
                                       {"closed_form_gap", rep.closed_form_gap},
                                       {"D_tilde_2_moves", rep.d2_moves},
                                       {"D_tilde_5_conserved", rep.d5_conserved}};
    }
    return doc;
}

json verify_report(const std::string& suite, Backend backend, int cases, std::uint64_t seed, bool& all_passed) {
    VerifyOptions o;
    o.backend = backend;
    o.cases = cases;
    o.seed = seed;
    json checks = json::array();
    all_passed = true;
    for (const auto& r : run_verify(suite, o)) {
        checks.push_back({{"name", r.name}, {"passed", r.passed}, {"backend", r.backend}, {"measure", value(r.measure)},
                          {"detail", r.detail}});
        all_passed = all_passed && r.passed;
    }
    return {{"suite", suite}, {"backend", backend_name(backend)}, {"cases", cases}, {"seed", seed},
            {"checks", checks}, {"passed", all_passed}};
}

// Largest |x - y| over the common samples and coefficients.
template <class T>
double max_gap(const Trajectory<T>& x, const Trajectory<double>& y, std::vector<double>* per_sample = nullptr) {
    if (x.samples() != y.samples()) fail(ErrorKind::DimensionMismatch, "trajectories have different sample counts");
    double worst = 0.0;
    for (std::size_t i = 0; i < x.samples(); ++i) {
        double here = 0.0;
        const std::size_t width = std::min(x.values[i].size(), y.values[i].size());
        for (std::size_t j = 0; j < width; ++j)
            here = std::max(here, std::fabs(to_double(x.values[i][j]) - y.values[i][j]));
        if (per_sample) per_sample->push_back(here);
        worst = std::max(worst, here);
    }
    return worst;
}

template <class T>
void simulate_series(const ScenarioConfig& c, Output& out, const Trajectory<double>* rk) {
    const Trajectory<T> series = run_series<T>(c, c.observe);
    if (c.wants("trajectory")) out.write("trajectory.csv", trajectory_csv(series));
    if (c.wants("moments")) out.write("moments.csv", moments_csv_series<T>(c));
    if (!rk) return;
    out.write("trajectory_rk4.csv", trajectory_csv(*rk));
    std::vector<double> per_sample;
    const double gap = max_gap(series, *rk, &per_sample);
    json samples = json::array();
    for (std::size_t i = 0; i < series.samples(); ++i)
        samples.push_back({{"t", value(series.times[i])},
                           {"max_abs_difference", per_sample[i]},
                           {"series_tail_estimate", series.diagnostics.empty() ? 0.0 : series.diagnostics[i]},
                           {"rk4_error_estimate", rk->diagnostics.empty() ? 0.0 : rk->diagnostics[i]}});
    out.write_json("comparison.json", {{"series_backend", backend_name(c.backend)},
                                       {"observed_coefficients", c.observe},
                                       {"max_abs_difference", gap},
                                       {"tolerance", 1e-6},
                                       {"within_tolerance", gap <= 1e-6},
                                       {"samples", samples}});
}

void cmd_simulate(const ScenarioConfig& c, Output& out) {
    if (c.method == RunMethod::RK4) {
        const auto rk = run_rk4(c.state<double>(), c, false, false);
        if (c.wants("trajectory")) out.write("trajectory.csv", trajectory_csv(rk));
        if (c.wants("moments")) out.write("moments.csv", moments_csv_states(rk, c.moment_depth));
    } else {
        std::optional<Trajectory<double>> rk;
        if (c.method == RunMethod::Both) rk = run_rk4(c.state<double>(), c, false, true);
        if (c.backend == Backend::ExactRational) simulate_series<Rational>(c, out, rk ? &*rk : nullptr);
        else simulate_series<double>(c, out, rk ? &*rk : nullptr);
    }
    if (c.wants("frc")) out.write_json("frc.json", frc_report(c));
    if (c.wants("integrals")) out.write_json("integrals.json", integrals_report(c));
    if (c.wants("verify")) {
        bool ok = false;
        out.write_json("verify.json", verify_report("all", c.backend, 10, VerifyOptions{}.seed, ok));
    }
}

template <class T>
json reconstruct_report(const ScenarioConfig& c) {
    const auto state = c.state<T>();
    const int r = c.family == Family::Product ? c.p : 1;
    const int q = c.family == Family::Product ? 1 : c.p;
    const int count = c.count();
    const int kmax = c.family == Family::Product ? count : count - 1 + q;
    const auto table = compute_moments(lax_matrix(state), alpha_depth(r, q, kmax));
    const auto back = reconstruct_sparse_lattice(
        table, c.family == Family::Product ? SparsityKind::L1Type : SparsityKind::L2Type, count);
    double worst = 0.0;
    bool exact = true;
    for (int i = 0; i < count; ++i) {
        worst = std::max(worst, std::fabs(to_double(back.coeffs[i]) - to_double(state.coeffs[i])));
        exact = exact && back.coeffs[i] == state.coeffs[i];
    }
    return {{"family", c.family == Family::Product ? "a" : "b"},
            {"p", c.p},
            {"boundary", std::string(to_string(state.boundary))},
            {"backend", backend_name(c.backend)},
            {"moment_depth", table.max_index()},
            {"delta_ladder", values(leading_minors(table, kmax))},
            {"input", values(state.coeffs)},
            {"coefficients", values(back.coeffs)},
            {"max_abs_error", worst},
            {"exact_match", exact}};
}

void cmd_reconstruct(const ScenarioConfig& c, Output& out) {
    out.write_json("reconstruct.json",
                   c.backend == Backend::ExactRational ? reconstruct_report<Rational>(c) : reconstruct_report<double>(c));
}

template <class T>
json miura_checks(const LatticeState<T>& a) {
    const auto square = commuting_square_mismatches(a, 10);
    json bad = json::array();
    for (const auto& m : square) bad.push_back({m.k, m.m, m.n});
    json doc = {{"commuting_square", {{"depth", 10}, {"mismatches", bad}, {"ok", square.empty()}}}};
    return doc;
}

json transport_json(const LatticeState<Rational>& a) {
    const auto rep = verify_determinant_transport(a, 8);
    return {{"max_k", 8}, {"transformed", values(rep.transformed)}, {"closed_form", values(rep.closed_form)},
            {"ok", rep.ok()}};
}

Trajectory<double> product_trajectory(const ScenarioConfig& c) {
    if (c.method == RunMethod::MomentSeries) return run_series<double>(c, c.count());
    return run_rk4(c.state<double>(), c, false, false);
}

void cmd_miura_forward(const ScenarioConfig& c, Output& out) {
    if (c.family != Family::Product) throw ConfigError("ConfigError", "forward Miura maps a product lattice (family \"a\")");
    const int b_count = c.count() - c.p + 1;
    if (c.finite && b_count < 2 * c.p)
        throw ConfigError("ConfigError", "forward Miura needs N >= 3p - 2 so that the sum lattice has N' >= 2p - 1");
    if (b_count < 1) throw ConfigError("ConfigError", "window too short for the forward Miura map");

    const auto a_traj = product_trajectory(c);
    const auto b_traj = miura_forward(a_traj);
    out.write("trajectory.csv", trajectory_csv(b_traj));

    // Oracle: integrate the sum lattice directly from b(0).
    const auto direct = run_rk4(b_traj.state(0), c, false, false);
    const double gap = max_gap(b_traj, direct);

    const auto exact_a = c.state<Rational>();
    json doc = c.backend == Backend::ExactRational ? miura_checks(exact_a) : miura_checks(c.state<double>());
    doc["direction"] = "forward";
    doc["backend"] = backend_name(c.backend);
    doc["b_initial"] = c.backend == Backend::ExactRational ? values(miura_forward(exact_a).coeffs)
                                                           : values(miura_forward(c.state<double>()).coeffs);
    doc["determinant_transport"] = transport_json(exact_a);
    doc["direct_sum_lattice_gap"] = gap;
    out.write_json("miura.json", doc);
}

void cmd_miura_inverse(const ScenarioConfig& c, const std::optional<std::vector<Rational>>& seed_override, Output& out) {
    if (c.family != Family::Sum) throw ConfigError("ConfigError", "inverse Miura maps a sum lattice (family \"b\")");
    if (c.finite && c.n() < 2 * c.p - 1) throw ConfigError("ConfigError", "inverse Miura needs N >= 2p - 1");
    std::vector<Rational> seeds = seed_override ? *seed_override : c.seeds;
    const bool default_seeds = seeds.empty();
    if (default_seeds) seeds.assign(static_cast<std::size_t>(c.p - 1), Rational(1));
    if (static_cast<int>(seeds.size()) != c.p - 1)
        throw ConfigError("ConfigError", "inverse Miura needs p - 1 = " + std::to_string(c.p - 1) + " seed values");

    const auto exact_b = c.state<Rational>();
    const auto exact_a = miura_inverse<Rational>(exact_b, seeds);

    MiuraSeeds<double> fseeds;
    for (const auto& s : seeds) fseeds.values.push_back(s.convert_to<double>());
    Trajectory<double> a_traj;
    if (c.method == RunMethod::MomentSeries) a_traj = miura_inverse(run_series<double>(c, c.count()), fseeds);
    else a_traj = miura_inverse(run_rk4(c.state<double>(), c, true, false), fseeds);
    out.write("trajectory.csv", trajectory_csv(a_traj));

    const auto b_back = miura_forward(a_traj);
    const auto b_direct = run_rk4(c.state<double>(), c, false, false);
    LatticeState<double> a0 = a_traj.state(0);
    const auto a_direct = run_rk4(a0, c, false, false);

    json doc = c.backend == Backend::ExactRational ? miura_checks(exact_a) : miura_checks(miura_inverse<double>(c.state<double>(), fseeds.values));
    doc["direction"] = "inverse";
    doc["backend"] = backend_name(c.backend);
    doc["seeds"] = values(seeds);
    doc["default_seeds"] = default_seeds;
    doc["a_initial"] = c.backend == Backend::ExactRational ? values(exact_a.coeffs)
                                                           : values(miura_inverse<double>(c.state<double>(), fseeds.values).coeffs);
    doc["roundtrip_gap"] = max_gap(b_back, b_direct);
    doc["direct_product_lattice_gap"] = max_gap(a_traj, a_direct);
    out.write_json("miura.json", doc);
}

json error_json(const std::string& kind, const std::string& message, std::optional<std::ptrdiff_t> index,
                const json& config) {
    return {{"error", {{"kind", kind}, {"message", message}, {"index", index ? json(*index) : json(nullptr)}}},
            {"config", config}};
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
        const std::optional<std::string>& max_terms_env) {
    CLI::App app{"Inverse-spectral integration of Bogoyavlensky lattices", "bogolat"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir = ".";
    std::string backend;
    std::string direction;
    std::string seed_values;
    std::string suite = "all";
    int cases = 10;
    std::uint64_t seed = VerifyOptions{}.seed;

    auto common = [&](CLI::App* sub, bool config_required) {
        auto* opt = sub->add_option("--config", config_path, "Scenario file (JSON)");
        if (config_required) opt->required();
        sub->add_option("--out", out_dir, "Output directory");
        sub->add_option("--backend", backend, "rational or float64 (overrides the scenario)")
            ->check(CLI::IsMember({"rational", "exact", "float64"}));
    };
    auto* simulate = app.add_subcommand("simulate", "Integrate a scenario and write trajectories");
    auto* reconstruct = app.add_subcommand("reconstruct", "Moments of the initial data and coefficient recovery");
    auto* miura = app.add_subcommand("miura", "Map between the product and sum lattices");
    auto* frc = app.add_subcommand("frc", "Finite rank coefficients and characteristic polynomial");
    auto* integrals = app.add_subcommand("integrals", "Drift of first integrals along an RK4 run");
    auto* verify = app.add_subcommand("verify", "Run the built-in consistency checks");
    for (auto* sub : {simulate, reconstruct, miura, frc, integrals}) common(sub, true);
    common(verify, false);
    miura->add_option("--direction", direction, "forward or inverse")->required()->check(CLI::IsMember({"forward", "inverse"}));
    miura->add_option("--seed-values", seed_values, "Comma separated a_0(0)..a_{p-2}(0) for the inverse map");
    verify->add_option("--suite", suite, "all, a check name, or a comma separated list");
    verify->add_option("--cases", cases, "Random cases per check")->check(CLI::Range(1, 1000));
    verify->add_option("--seed", seed, "Seed of the random cases");

    json config_echo = nullptr;
    auto report = [&](const std::string& kind, const std::string& message, std::optional<std::ptrdiff_t> index, int code) {
        const json doc = error_json(kind, message, index, config_echo);
        err << doc.dump(2) << "\n";
        try {
            Output(out_dir).write_json("error.json", doc);
        } catch (const std::exception&) {
            // The error is already on stderr.
        }
        return code;
    };

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kOk;
    } catch (const CLI::ParseError& e) {
        return report("UsageError", e.what(), std::nullopt, kConfigError);
    }

    Output output(out_dir);
    try {
        std::optional<ScenarioConfig> cfg;
        if (!config_path.empty()) {
            config_echo = read_json_file(config_path);
            cfg = parse_scenario(config_echo, max_terms_env);
        }
        if (cfg && !backend.empty()) cfg->backend = backend == "float64" ? Backend::Float64 : Backend::ExactRational;

        int code = kOk;
        if (simulate->parsed()) cmd_simulate(*cfg, output);
        else if (reconstruct->parsed()) cmd_reconstruct(*cfg, output);
        else if (frc->parsed()) output.write_json("frc.json", frc_report(*cfg));
        else if (integrals->parsed()) output.write_json("integrals.json", integrals_report(*cfg));
        else if (miura->parsed()) {
            std::optional<std::vector<Rational>> seeds;
            if (!seed_values.empty()) seeds = parse_value_list(seed_values);
            if (direction == "forward") cmd_miura_forward(*cfg, output);
            else cmd_miura_inverse(*cfg, seeds, output);
        } else if (verify->parsed()) {
            const auto names = verify_check_names();
            std::stringstream parts(suite);
            std::string part;
            while (std::getline(parts, part, ','))
                if (part != "all" && std::find(names.begin(), names.end(), part) == names.end())
                    throw ConfigError("ConfigError", "unknown verify check '" + part + "'");
            Backend b = backend.empty() ? (cfg ? cfg->backend : Backend::ExactRational)
                                        : (backend == "float64" ? Backend::Float64 : Backend::ExactRational);
            bool ok = false;
            output.write_json("verify.json", verify_report(suite, b, cases, seed, ok));
            if (!ok) code = kDomainError;
        }
        json summary = {{"status", code == kOk ? "ok" : "failed"}, {"files", output.files()}};
        out << summary.dump() << "\n";
        return code;
    } catch (const ConfigError& e) {
        return report(e.kind(), e.what(), e.index(), kConfigError);
    } catch (const Error& e) {
        return report(std::string(to_string(e.kind())), e.what(), e.index(), kDomainError);
    } catch (const std::exception& e) {
        return report("InternalError", e.what(), std::nullopt, kDomainError);
    }
}

}  // namespace bogolat::cli
