#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace pdacc {

enum class ErrorCode {
    UnsupportedField,
    ZeroInverse,
    MdsUnavailable,
    BadStrength,
    LengthMismatch,
    ParamMismatch,
    BadParams,
    PreconditionUnmet,
    BadLength,
    DecodeFailure,
    InvalidPda,
    ParseError,
};

inline std::string_view to_string(ErrorCode code) {
    switch (code) {
    case ErrorCode::UnsupportedField: return "UnsupportedField";
    case ErrorCode::ZeroInverse: return "ZeroInverse";
    case ErrorCode::MdsUnavailable: return "MdsUnavailable";
    case ErrorCode::BadStrength: return "BadStrength";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::ParamMismatch: return "ParamMismatch";
    case ErrorCode::BadParams: return "BadParams";
    case ErrorCode::PreconditionUnmet: return "PreconditionUnmet";
    case ErrorCode::BadLength: return "BadLength";
    case ErrorCode::DecodeFailure: return "DecodeFailure";
    case ErrorCode::InvalidPda: return "InvalidPda";
    case ErrorCode::ParseError: return "ParseError";
    }
    return "Unknown";
}

/// Every failure raised by the library carries one of the codes above.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

} // namespace pdacc
