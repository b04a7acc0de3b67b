#pragma once

#include <stdexcept>
#include <string>

namespace peerroles {

enum class ErrorKind {
    InvalidMode,
    InvalidInput,
    InvalidParameter,
    DegenerateNetwork,
    UndefinedCorrelation,
    DataIntegrity,
    Parse,
    Referential,
    Validity,
    Config,
    Io,
};

const char* to_string(ErrorKind kind) noexcept;

// Single exception type for the library; callers branch on kind().
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(message), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

    // Errors caused by bad user input or configuration (CLI exit code 2).
    bool is_input_error() const noexcept {
        switch (kind_) {
        case ErrorKind::Parse:
        case ErrorKind::Referential:
        case ErrorKind::Validity:
        case ErrorKind::Config:
        case ErrorKind::Io:
        case ErrorKind::DataIntegrity:
        case ErrorKind::InvalidParameter:
            return true;
        default:
            return false;
        }
    }

private:
    ErrorKind kind_;
};

}  // namespace peerroles
