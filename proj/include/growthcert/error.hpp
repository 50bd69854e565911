#pragma once

#include <stdexcept>
#include <string>

namespace growthcert {

enum class ErrorKind {
    InvalidParameter,
    ConvergenceFailure,
    NumericFailure,
    ResolventSingular,
    InsufficientBound,
    DomainError,
    InvalidSequence,
    ResourceError,
    NotStableCertified,
    ConfigError,
};

const char* to_string(ErrorKind kind) noexcept;

// Single exception type for the library; callers switch on kind().
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

inline const char* to_string(ErrorKind kind) noexcept {
    switch (kind) {
        case ErrorKind::InvalidParameter: return "invalid-parameter";
        case ErrorKind::ConvergenceFailure: return "convergence-failure";
        case ErrorKind::NumericFailure: return "numeric-failure";
        case ErrorKind::ResolventSingular: return "resolvent-singular";
        case ErrorKind::InsufficientBound: return "insufficient-bound";
        case ErrorKind::DomainError: return "domain-error";
        case ErrorKind::InvalidSequence: return "invalid-sequence";
        case ErrorKind::ResourceError: return "resource-error";
        case ErrorKind::NotStableCertified: return "not-stable-certified";
        case ErrorKind::ConfigError: return "config-error";
    }
    return "unknown";
}

}  // namespace growthcert
