#ifndef BOGOLAT_TOOLS_SCENARIO_HPP_
#define BOGOLAT_TOOLS_SCENARIO_HPP_

#include <cstddef>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "bogolat/lattice.hpp"
#include "bogolat/scalar.hpp"

namespace bogolat::cli {

/// A malformed or inconsistent scenario file (exit code 2).
class ConfigError : public std::runtime_error {
public:
    ConfigError(std::string kind, const std::string& message, std::optional<std::ptrdiff_t> index = {})
    : std::runtime_error(message), kind_(std::move(kind)), index_(index) {}

    const std::string& kind() const noexcept { return kind_; }
    std::optional<std::ptrdiff_t> index() const noexcept { return index_; }

private:
    std::string kind_;
    std::optional<std::ptrdiff_t> index_;
};

enum class RunMethod { MomentSeries, RK4, Both };

/// Numbers are kept as exact rationals; decimal input such as 0.1 means
/// 1/10 and binary64 values are derived from them on demand.
struct ScenarioConfig {
    Family family = Family::Product;
    int p = 2;
    /// Open-end lattice with N + 1 coefficients, or a window of W.
    bool finite = true;
    int size = 0;
    std::vector<Rational> initial;
    Rational t_end{0};
    Rational dt{0};
    /// Spacing of the written samples; defaults to dt.
    Rational output_dt{0};
    RunMethod method = RunMethod::RK4;
    Backend backend = Backend::Float64;
    int series_terms_max = 60;
    std::vector<Rational> seeds;
    std::set<std::string> outputs;
    /// Highest moment index written to moments.csv.
    int moment_depth = 8;
    /// Number of leading coefficients reconstructed by the series method.
    int observe = 0;
    nlohmann::json raw;

    int count() const { return static_cast<int>(initial.size()); }
    /// N for finite lattices.
    int n() const { return count() - 1; }
    bool wants(const std::string& output) const { return outputs.count(output) != 0; }

    template <class T>
    LatticeState<T> state() const {
        LatticeState<T> s;
        s.family = family;
        s.order = p;
        s.boundary = finite ? Boundary::OpenEnd : Boundary::TruncatedSemiInfinite;
        for (const auto& x : initial) {
            if constexpr (is_exact_v<T>) s.coeffs.push_back(x);
            else s.coeffs.push_back(static_cast<T>(x.convert_to<double>()));
        }
        return s;
    }
};

/// Parses and validates a scenario. Throws ConfigError. `max_terms_env`
/// (the BOGOLAT_MAX_TERMS value, if set) overrides series_terms_max.
ScenarioConfig parse_scenario(const nlohmann::json& doc, const std::optional<std::string>& max_terms_env = {});

/// Throws ConfigError when the file is missing or not JSON.
nlohmann::json read_json_file(const std::string& path);

ScenarioConfig load_scenario(const std::string& path, const std::optional<std::string>& max_terms_env = {});

/// "1,2/3,0.5" -> rationals. Throws ConfigError.
std::vector<Rational> parse_value_list(const std::string& text);

Rational json_rational(const nlohmann::json& value, const std::string& field, std::optional<std::ptrdiff_t> index = {});

}  // namespace bogolat::cli

#endif  // BOGOLAT_TOOLS_SCENARIO_HPP_
