#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace paramaudit {

enum class ErrorCode {
    InvalidArgument,
    InvalidDescriptor,
    InvalidChain,
    OrderTooLarge,
    NotNormal,
    NonIntegralGenus,
    NoEvidence,
    NotEnoughClasses,
    BranchPoint,
    OddDegree,
    DegreeTooHigh,
    NotSeparable,
    FactorizationTooLarge,
    Overflow,
    ParseError,
    GenusNotCertified,
    EmbeddingNotCertified,
    MissingLocalEvidence,
    ClassSearchFailed,
    OracleGap,
    NonUniqueIndexTwo,
};

std::string_view error_code_name(ErrorCode code);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(message), code_(code) {}
    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
    throw Error(code, message);
}

}  // namespace paramaudit
