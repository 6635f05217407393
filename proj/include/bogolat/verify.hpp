#ifndef BOGOLAT_VERIFY_HPP_
#define BOGOLAT_VERIFY_HPP_

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "bogolat/scalar.hpp"

namespace bogolat {

/// Outcome of one built-in consistency check. `measure` is the largest
/// observed defect (0 for exact checks that hold).
struct CheckResult {
    std::string name;
    bool passed = false;
    std::string backend;
    double measure = 0.0;
    std::string detail;
};

struct VerifyOptions {
    Backend backend = Backend::ExactRational;
    /// Random cases per randomized check.
    int cases = 10;
    std::uint64_t seed = 0x5eed0001;
};

/// Names accepted by run_verify, in execution order.
std::vector<std::string_view> verify_check_names();

/// Runs "all", a single check, or a comma separated list. Checks that only
/// make sense in one arithmetic (time integration, resolvent probes) run in
/// binary64 regardless of the requested backend; the result records which
/// one was used. Domain errors inside a check mark it failed.
std::vector<CheckResult> run_verify(std::string_view suite, const VerifyOptions& options = {});

}  // namespace bogolat

#endif  // BOGOLAT_VERIFY_HPP_
