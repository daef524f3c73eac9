#include "resonance/error.hpp"

namespace resonance {

std::string_view to_string(ErrorCode code) noexcept {
    switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::Parse: return "Parse";
    case ErrorCode::Overflow: return "Overflow";
    case ErrorCode::ZeroOnContour: return "ZeroOnContour";
    case ErrorCode::QuadratureNotConverged: return "QuadratureNotConverged";
    case ErrorCode::NonConvergedNewton: return "NonConvergedNewton";
    case ErrorCode::IncompleteCoverage: return "IncompleteCoverage";
    case ErrorCode::EnvelopeViolation: return "EnvelopeViolation";
    case ErrorCode::SeriesNotConverged: return "SeriesNotConverged";
    case ErrorCode::CenterIsZero: return "CenterIsZero";
    case ErrorCode::ZeroOnCircle: return "ZeroOnCircle";
    }
    return "Unknown";
}

Error::Error(ErrorCode code, const std::string& what)
    : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

} // namespace resonance
