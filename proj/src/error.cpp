#include "bogolat/error.hpp"

namespace bogolat {

std::string_view to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::InvalidArgument: return "InvalidArgument";
        case ErrorKind::ZeroCoefficient: return "ZeroCoefficient";
        case ErrorKind::DimensionMismatch: return "DimensionMismatch";
        case ErrorKind::WindowTooSmall: return "WindowTooSmall";
        case ErrorKind::LambdaInsideBound: return "LambdaInsideBound";
        case ErrorKind::SingularShift: return "SingularShift";
        case ErrorKind::IndexBeyondTable: return "IndexBeyondTable";
        case ErrorKind::NearSingular: return "NearSingular";
        case ErrorKind::DegenerateMoments: return "DegenerateMoments";
        case ErrorKind::SparsityViolated: return "SparsityViolated";
        case ErrorKind::SeriesNotConverged: return "SeriesNotConverged";
        case ErrorKind::DenominatorVanished: return "DenominatorVanished";
        case ErrorKind::BlowUp: return "BlowUp";
        case ErrorKind::AdaptiveHorizonExceeded: return "AdaptiveHorizonExceeded";
        case ErrorKind::MissingAccumulators: return "MissingAccumulators";
        case ErrorKind::MissingHistory: return "MissingHistory";
        case ErrorKind::RankDeficient: return "RankDeficient";
    }
    return "Unknown";
}

}  // namespace bogolat
