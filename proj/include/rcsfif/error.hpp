#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace rcsfif {

enum class Errc {
    NonIncreasingKnots,
    TooFewPoints,
    NonFiniteValue,
    LengthMismatch,
    DerivativesAlreadyPresent,
    MissingDerivatives,
    ContractivityViolation,
    NonPositiveU,
    NegativeV,
    OutOfDomain,
    DepthTooLarge,
    NonPositiveData,
    AlphaOnBoundary,
    DataOutsideRectangle,
    DataNotAboveLine,
    DataNotBelowLine,
    InfeasibleConstraint,
    UnknownScenario,
    ExpectationFailed,
    ParseError,
    IoError,
    InvalidArgument,
};

inline std::string_view to_string(Errc code) {
    switch (code) {
    case Errc::NonIncreasingKnots: return "NonIncreasingKnots";
    case Errc::TooFewPoints: return "TooFewPoints";
    case Errc::NonFiniteValue: return "NonFiniteValue";
    case Errc::LengthMismatch: return "LengthMismatch";
    case Errc::DerivativesAlreadyPresent: return "DerivativesAlreadyPresent";
    case Errc::MissingDerivatives: return "MissingDerivatives";
    case Errc::ContractivityViolation: return "ContractivityViolation";
    case Errc::NonPositiveU: return "NonPositiveU";
    case Errc::NegativeV: return "NegativeV";
    case Errc::OutOfDomain: return "OutOfDomain";
    case Errc::DepthTooLarge: return "DepthTooLarge";
    case Errc::NonPositiveData: return "NonPositiveData";
    case Errc::AlphaOnBoundary: return "AlphaOnBoundary";
    case Errc::DataOutsideRectangle: return "DataOutsideRectangle";
    case Errc::DataNotAboveLine: return "DataNotAboveLine";
    case Errc::DataNotBelowLine: return "DataNotBelowLine";
    case Errc::InfeasibleConstraint: return "InfeasibleConstraint";
    case Errc::UnknownScenario: return "UnknownScenario";
    case Errc::ExpectationFailed: return "ExpectationFailed";
    case Errc::ParseError: return "ParseError";
    case Errc::IoError: return "IoError";
    case Errc::InvalidArgument: return "InvalidArgument";
    }
    return "Unknown";
}

/// Exception carrying a machine-readable error code.
class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

    [[nodiscard]] Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

} // namespace rcsfif
