#ifndef BOGOLAT_TOOLS_CLI_HPP_
#define BOGOLAT_TOOLS_CLI_HPP_

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace bogolat::cli {

enum ExitCode { kOk = 0, kDomainError = 1, kConfigError = 2 };

/// Runs one invocation; `args` excludes the program name. Errors go to `err`
/// as JSON and to <out>/error.json. `max_terms_env` carries BOGOLAT_MAX_TERMS.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
        const std::optional<std::string>& max_terms_env = {});

}  // namespace bogolat::cli

#endif  // BOGOLAT_TOOLS_CLI_HPP_
