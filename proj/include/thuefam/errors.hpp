#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace thuefam {

enum class ErrorKind {
    NonMonic,
    ReduciblePolynomial,
    TotallyReal,
    DivisionByZero,
    ZeroElement,
    ZeroPolynomial,
    InvalidParameter,
    ReducibleForm,
    NotAUnit,
    DegenerateN,
    ZeroValue,
    TrivialXY,
    PrecisionExhausted,
    AmbiguousOrdering,
    NotThirdCase,
    DegenerateAngle,
    OutOfDomain,
    FieldMismatch,
};

std::string_view to_string(ErrorKind kind);

/// Every failure raised by the library carries one of the kinds above so the
/// CLI and the Python layer can map it to an exit code or exception type.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

inline std::string_view to_string(ErrorKind kind) {
    switch (kind) {
    case ErrorKind::NonMonic: return "NonMonic";
    case ErrorKind::ReduciblePolynomial: return "ReduciblePolynomial";
    case ErrorKind::TotallyReal: return "TotallyReal";
    case ErrorKind::DivisionByZero: return "DivisionByZero";
    case ErrorKind::ZeroElement: return "ZeroElement";
    case ErrorKind::ZeroPolynomial: return "ZeroPolynomial";
    case ErrorKind::InvalidParameter: return "InvalidParameter";
    case ErrorKind::ReducibleForm: return "ReducibleForm";
    case ErrorKind::NotAUnit: return "NotAUnit";
    case ErrorKind::DegenerateN: return "DegenerateN";
    case ErrorKind::ZeroValue: return "ZeroValue";
    case ErrorKind::TrivialXY: return "TrivialXY";
    case ErrorKind::PrecisionExhausted: return "PrecisionExhausted";
    case ErrorKind::AmbiguousOrdering: return "AmbiguousOrdering";
    case ErrorKind::NotThirdCase: return "NotThirdCase";
    case ErrorKind::DegenerateAngle: return "DegenerateAngle";
    case ErrorKind::OutOfDomain: return "OutOfDomain";
    case ErrorKind::FieldMismatch: return "FieldMismatch";
    }
    return "Unknown";
}

}  // namespace thuefam
