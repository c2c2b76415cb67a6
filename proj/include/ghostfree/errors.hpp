#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace ghostfree {

enum class ErrorKind {
    NonCanonicalMap,
    NotHermitian,
    SingularExponent,
    ChiSingular,
    SigmaZero,
    SingularChoice,
    ThetaOutOfRange,
    OmegaInconsistent,
    LambdaZero,
    DerivationMismatch,
    NoSignChange,
    InvalidArgument,
};

std::string_view to_string(ErrorKind kind) noexcept;

// Single exception type for every typed failure in the library; callers that
// need to distinguish poles from constraint violations switch on kind().
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

} // namespace ghostfree
