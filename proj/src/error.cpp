#include "paramaudit/error.hpp"

namespace paramaudit {

std::string_view error_code_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::InvalidArgument: return "InvalidArgument";
        case ErrorCode::InvalidDescriptor: return "InvalidDescriptor";
        case ErrorCode::InvalidChain: return "InvalidChain";
        case ErrorCode::OrderTooLarge: return "OrderTooLarge";
        case ErrorCode::NotNormal: return "NotNormal";
        case ErrorCode::NonIntegralGenus: return "NonIntegralGenus";
        case ErrorCode::NoEvidence: return "NoEvidence";
        case ErrorCode::NotEnoughClasses: return "NotEnoughClasses";
        case ErrorCode::BranchPoint: return "BranchPoint";
        case ErrorCode::OddDegree: return "OddDegree";
        case ErrorCode::DegreeTooHigh: return "DegreeTooHigh";
        case ErrorCode::NotSeparable: return "NotSeparable";
        case ErrorCode::FactorizationTooLarge: return "FactorizationTooLarge";
        case ErrorCode::Overflow: return "Overflow";
        case ErrorCode::ParseError: return "ParseError";
        case ErrorCode::GenusNotCertified: return "GenusNotCertified";
        case ErrorCode::EmbeddingNotCertified: return "EmbeddingNotCertified";
        case ErrorCode::MissingLocalEvidence: return "MissingLocalEvidence";
        case ErrorCode::ClassSearchFailed: return "ClassSearchFailed";
        case ErrorCode::OracleGap: return "OracleGap";
        case ErrorCode::NonUniqueIndexTwo: return "NonUniqueIndexTwo";
    }
    return "Unknown";
}

}  // namespace paramaudit
