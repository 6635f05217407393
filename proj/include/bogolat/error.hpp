#ifndef BOGOLAT_ERROR_HPP_
#define BOGOLAT_ERROR_HPP_

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace bogolat {

enum class ErrorKind {
    InvalidArgument,
    ZeroCoefficient,
    DimensionMismatch,
    WindowTooSmall,
    LambdaInsideBound,
    SingularShift,
    IndexBeyondTable,
    NearSingular,
    DegenerateMoments,
    SparsityViolated,
    SeriesNotConverged,
    DenominatorVanished,
    BlowUp,
    AdaptiveHorizonExceeded,
    MissingAccumulators,
    MissingHistory,
    RankDeficient,
};

std::string_view to_string(ErrorKind kind);

/// Every domain failure in the library is reported through this type. The
/// optional index names the offending coefficient, moment, or grid point.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message, std::optional<std::ptrdiff_t> index = {})
    : std::runtime_error(message), kind_(kind), index_(index) {}

    ErrorKind kind() const noexcept { return kind_; }
    std::optional<std::ptrdiff_t> index() const noexcept { return index_; }

private:
    ErrorKind kind_;
    std::optional<std::ptrdiff_t> index_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& message,
                              std::optional<std::ptrdiff_t> index = {}) {
    throw Error(kind, message, index);
}

}  // namespace bogolat

#endif  // BOGOLAT_ERROR_HPP_
