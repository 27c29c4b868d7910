#ifndef CONFLOER_ERROR_HPP
#define CONFLOER_ERROR_HPP

#include <stdexcept>
#include <string>

namespace confloer {

enum class ErrorCode {
    InvalidInput,
    DSquaredNonzero,
    DegreeMismatch,
    IsolationViolated,
    CollarTooThin,
    ActionNotSymmetry,
    WindowTooSmall,
    ParityViolation,
    TailPatternViolation,
    CongruenceViolation,
    FlavorMismatch,
    ShiftParityError,
    DivisibilityError,
    NotNegativeDefinite,
    FieldMismatch,
    UnsupportedInteraction,
};

inline const char* error_code_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::InvalidInput: return "InvalidInput";
        case ErrorCode::DSquaredNonzero: return "DSquaredNonzero";
        case ErrorCode::DegreeMismatch: return "DegreeMismatch";
        case ErrorCode::IsolationViolated: return "IsolationViolated";
        case ErrorCode::CollarTooThin: return "CollarTooThin";
        case ErrorCode::ActionNotSymmetry: return "ActionNotSymmetry";
        case ErrorCode::WindowTooSmall: return "WindowTooSmall";
        case ErrorCode::ParityViolation: return "ParityViolation";
        case ErrorCode::TailPatternViolation: return "TailPatternViolation";
        case ErrorCode::CongruenceViolation: return "CongruenceViolation";
        case ErrorCode::FlavorMismatch: return "FlavorMismatch";
        case ErrorCode::ShiftParityError: return "ShiftParityError";
        case ErrorCode::DivisibilityError: return "DivisibilityError";
        case ErrorCode::NotNegativeDefinite: return "NotNegativeDefinite";
        case ErrorCode::FieldMismatch: return "FieldMismatch";
        case ErrorCode::UnsupportedInteraction: return "UnsupportedInteraction";
    }
    return "Unknown";
}

/// Exception carrying a machine-readable code plus an optional witness
/// (generator pair, cell id, parameter index, ...) for reports.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, std::string message, std::string witness = {})
        : std::runtime_error(message),
          code_(code),
          message_(std::move(message)),
          witness_(std::move(witness)) {}

    ErrorCode code() const { return code_; }
    const std::string& message() const { return message_; }
    const std::string& witness() const { return witness_; }

private:
    ErrorCode code_;
    std::string message_;
    std::string witness_;
};

[[noreturn]] inline void fail(ErrorCode code, std::string message, std::string witness = {}) {
    throw Error(code, std::move(message), std::move(witness));
}

} // namespace confloer

#endif
