#include "scenario.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "bogolat/error.hpp"

namespace bogolat::cli {

namespace {

using nlohmann::json;

const std::set<std::string> kKnownKeys = {"family", "p", "size", "initial", "t_end", "dt", "output_dt",
                                          "method", "backend", "series_terms_max", "seeds", "outputs",
                                          "moment_depth", "observe"};
const std::set<std::string> kKnownOutputs = {"trajectory", "moments", "frc", "integrals", "verify"};

[[noreturn]] void bad(const std::string& message, std::optional<std::ptrdiff_t> index = {}) {
    throw ConfigError("ConfigError", message, index);
}

int json_int(const json& doc, const std::string& field, int fallback, int lo, int hi) {
    if (!doc.contains(field)) return fallback;
    const json& v = doc.at(field);
    if (!v.is_number_integer()) bad("'" + field + "' must be an integer");
    const auto x = v.get<long long>();
    if (x < lo || x > hi) bad("'" + field + "' must lie in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
    return static_cast<int>(x);
}

std::string json_string(const json& doc, const std::string& field, const std::string& fallback) {
    if (!doc.contains(field)) return fallback;
    if (!doc.at(field).is_string()) bad("'" + field + "' must be a string");
    return doc.at(field).get<std::string>();
}

std::vector<Rational> json_values(const json& doc, const std::string& field, bool nonzero) {
    const json& v = doc.at(field);
    if (!v.is_array()) bad("'" + field + "' must be a list of numbers");
    std::vector<Rational> out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        out.push_back(json_rational(v[i], field, static_cast<std::ptrdiff_t>(i)));
        if (nonzero && out.back() == 0)
            throw ConfigError("ZeroCoefficient", "'" + field + "' entries must be nonzero", static_cast<std::ptrdiff_t>(i));
    }
    return out;
}

// Ratio a / b as an integer, or a ConfigError.
long long exact_steps(const Rational& a, const Rational& b, const std::string& what) {
    const Rational ratio = a / b;
    if (denominator(ratio) != 1) bad(what + " is not an integer number of steps");
    if (ratio > 10'000'000) bad(what + " needs more than 10^7 steps");
    return numerator(ratio).convert_to<long long>();
}

}  // namespace

Rational json_rational(const json& value, const std::string& field, std::optional<std::ptrdiff_t> index) {
    try {
        if (value.is_number_integer()) {
            if (value.is_number_unsigned()) return Rational(value.get<unsigned long long>());
            return Rational(value.get<long long>());
        }
        if (value.is_number_float()) {
            const double x = value.get<double>();
            if (!std::isfinite(x)) bad("'" + field + "' must be finite", index);
            return parse_rational(to_string(x));
        }
        if (value.is_string()) return parse_rational(value.get<std::string>());
    } catch (const Error& e) {
        bad("'" + field + "': " + e.what(), index);
    }
    bad("'" + field + "' must be a number or a numeric string", index);
}

std::vector<Rational> parse_value_list(const std::string& text) {
    std::vector<Rational> out;
    std::stringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
        try {
            out.push_back(parse_rational(item));
        } catch (const Error& e) {
            bad("seed value '" + item + "': " + e.what(), static_cast<std::ptrdiff_t>(out.size()));
        }
        if (out.back() == 0)
            throw ConfigError("ZeroCoefficient", "seed values must be nonzero", static_cast<std::ptrdiff_t>(out.size() - 1));
    }
    if (out.empty()) bad("empty seed value list");
    return out;
}

ScenarioConfig parse_scenario(const json& doc, const std::optional<std::string>& max_terms_env) {
    if (!doc.is_object()) bad("scenario must be a JSON object");
    for (const auto& item : doc.items())
        if (!kKnownKeys.count(item.key())) bad("unknown field '" + item.key() + "'");

    ScenarioConfig c;
    c.raw = doc;

    const std::string family = json_string(doc, "family", "");
    if (family == "a") c.family = Family::Product;
    else if (family == "b") c.family = Family::Sum;
    else bad("'family' must be \"a\" or \"b\"");

    if (!doc.contains("p")) bad("missing 'p'");
    c.p = json_int(doc, "p", 0, 1, 16);

    if (!doc.contains("initial")) bad("missing 'initial'");
    c.initial = json_values(doc, "initial", true);
    if (c.initial.empty()) bad("'initial' must not be empty");

    if (doc.contains("size")) {
        const json& size = doc.at("size");
        if (!size.is_object() || size.size() != 1 || !(size.contains("N") || size.contains("W")))
            bad("'size' must be {\"N\": n} or {\"W\": w}");
        c.finite = size.contains("N");
        const int value = c.finite ? json_int(size, "N", 0, 0, 4096) : json_int(size, "W", 0, 1, 4096);
        const std::size_t want = static_cast<std::size_t>(c.finite ? value + 1 : value);
        if (c.initial.size() == 1) c.initial.assign(want, c.initial.front());
        else if (c.initial.size() != want)
            bad("'initial' has " + std::to_string(c.initial.size()) + " values, size asks for " + std::to_string(want));
        c.size = value;
    } else {
        c.size = c.count() - 1;
    }
    if (c.family == Family::Product && c.count() < c.p - 1)
        bad("a product lattice of order p needs at least p - 1 coefficients");

    c.t_end = doc.contains("t_end") ? json_rational(doc.at("t_end"), "t_end") : Rational(0);
    c.dt = doc.contains("dt") ? json_rational(doc.at("dt"), "dt") : Rational(1, 1000);
    if (c.t_end < 0) bad("'t_end' must be nonnegative");
    if (c.dt <= 0) bad("'dt' must be positive");
    c.output_dt = doc.contains("output_dt") ? json_rational(doc.at("output_dt"), "output_dt") : c.dt;
    if (c.output_dt <= 0) bad("'output_dt' must be positive");
    exact_steps(c.t_end, c.dt, "t_end / dt");
    exact_steps(c.output_dt, c.dt, "output_dt / dt");
    exact_steps(c.t_end, c.output_dt, "t_end / output_dt");

    const std::string method = json_string(doc, "method", "rk4");
    if (method == "moment-series") c.method = RunMethod::MomentSeries;
    else if (method == "rk4") c.method = RunMethod::RK4;
    else if (method == "both") c.method = RunMethod::Both;
    else bad("'method' must be \"moment-series\", \"rk4\" or \"both\"");

    const std::string backend = json_string(doc, "backend", "float64");
    if (backend == "rational" || backend == "exact") c.backend = Backend::ExactRational;
    else if (backend == "float64") c.backend = Backend::Float64;
    else bad("'backend' must be \"rational\" or \"float64\"");

    c.series_terms_max = json_int(doc, "series_terms_max", 60, 1, 10000);
    if (max_terms_env) {
        try {
            std::size_t used = 0;
            const long v = std::stol(*max_terms_env, &used);
            if (used != max_terms_env->size() || v < 1 || v > 10000) throw std::invalid_argument("range");
            c.series_terms_max = static_cast<int>(v);
        } catch (const std::exception&) {
            bad("BOGOLAT_MAX_TERMS must be an integer in [1, 10000]");
        }
    }

    if (doc.contains("seeds")) c.seeds = json_values(doc, "seeds", true);

    if (doc.contains("outputs")) {
        const json& outs = doc.at("outputs");
        if (!outs.is_array()) bad("'outputs' must be a list");
        for (std::size_t i = 0; i < outs.size(); ++i) {
            if (!outs[i].is_string() || !kKnownOutputs.count(outs[i].get<std::string>()))
                bad("'outputs' entries must be trajectory, moments, frc, integrals or verify", static_cast<std::ptrdiff_t>(i));
            c.outputs.insert(outs[i].get<std::string>());
        }
    } else {
        c.outputs = {"trajectory"};
    }

    c.moment_depth = json_int(doc, "moment_depth", 8, 0, 512);
    c.observe = json_int(doc, "observe", c.finite ? c.count() : std::min(c.count(), 8), 1, c.count());
    return c;
}

json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) bad("cannot open config '" + path + "'");
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        bad(std::string("config is not valid JSON: ") + e.what());
    }
    return doc;
}

ScenarioConfig load_scenario(const std::string& path, const std::optional<std::string>& max_terms_env) {
    return parse_scenario(read_json_file(path), max_terms_env);
}

}  // namespace bogolat::cli
