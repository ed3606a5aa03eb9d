#include "mfx/error.hpp"

namespace mfx {

std::string_view to_string(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::NonPositiveValue: return "NonPositiveValue";
        case ErrorCode::SeriesTooShort: return "SeriesTooShort";
        case ErrorCode::FrequencyMismatch: return "FrequencyMismatch";
        case ErrorCode::EmptyOverlap: return "EmptyOverlap";
        case ErrorCode::WrongFrequency: return "WrongFrequency";
        case ErrorCode::NoCompleteQuarter: return "NoCompleteQuarter";
        case ErrorCode::NotDivisible: return "NotDivisible";
        case ErrorCode::TooShort: return "TooShort";
        case ErrorCode::NotInvertible: return "NotInvertible";
        case ErrorCode::RankDeficient: return "RankDeficient";
        case ErrorCode::DimensionMismatch: return "DimensionMismatch";
        case ErrorCode::InvalidShape: return "InvalidShape";
        case ErrorCode::InsufficientSpan: return "InsufficientSpan";
        case ErrorCode::IllegalRestriction: return "IllegalRestriction";
        case ErrorCode::InsufficientHistory: return "InsufficientHistory";
        case ErrorCode::InvalidWindow: return "InvalidWindow";
        case ErrorCode::EmptyInput: return "EmptyInput";
        case ErrorCode::DegenerateVariance: return "DegenerateVariance";
        case ErrorCode::OrderNotFound: return "OrderNotFound";
        case ErrorCode::ParseError: return "ParseError";
        case ErrorCode::MissingValue: return "MissingValue";
        case ErrorCode::NonMonotonicDates: return "NonMonotonicDates";
        case ErrorCode::MissingRole: return "MissingRole";
        case ErrorCode::VersionMismatch: return "VersionMismatch";
        case ErrorCode::ChecksumFailure: return "ChecksumFailure";
        case ErrorCode::InvalidArgument: return "InvalidArgument";
        case ErrorCode::IoError: return "IoError";
    }
    return "Unknown";
}

Error::Error(ErrorCode code, const std::string& detail)
    : std::runtime_error(std::string(to_string(code)) + (detail.empty() ? "" : ": " + detail)),
      code_(code),
      detail_(detail) {}

}  // namespace mfx
