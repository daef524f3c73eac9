#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace resonance {

enum class ErrorCode {
    InvalidArgument,
    Parse,
    Overflow,
    ZeroOnContour,
    QuadratureNotConverged,
    NonConvergedNewton,
    IncompleteCoverage,
    EnvelopeViolation,
    SeriesNotConverged,
    CenterIsZero,
    ZeroOnCircle,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Every failure raised by the library carries one of the codes above so
/// callers (notably the CLI) can map it onto an exit status.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what);

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

} // namespace resonance
