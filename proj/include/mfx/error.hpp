#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace mfx {

enum class ErrorCode {
    NonPositiveValue,
    SeriesTooShort,
    FrequencyMismatch,
    EmptyOverlap,
    WrongFrequency,
    NoCompleteQuarter,
    NotDivisible,
    TooShort,
    NotInvertible,
    RankDeficient,
    DimensionMismatch,
    InvalidShape,
    InsufficientSpan,
    IllegalRestriction,
    InsufficientHistory,
    InvalidWindow,
    EmptyInput,
    DegenerateVariance,
    OrderNotFound,
    ParseError,
    MissingValue,
    NonMonotonicDates,
    MissingRole,
    VersionMismatch,
    ChecksumFailure,
    InvalidArgument,
    IoError,
};

[[nodiscard]] std::string_view to_string(ErrorCode code) noexcept;

/// True for failures of the numerics (as opposed to bad input); the CLI maps
/// these to exit status 2.
[[nodiscard]] constexpr bool is_numerical(ErrorCode code) noexcept {
    return code == ErrorCode::RankDeficient || code == ErrorCode::DegenerateVariance;
}

/// Every failure raised by the library. The message always starts with the
/// code name so diagnostics can be grepped.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& detail);

    [[nodiscard]] ErrorCode code() const noexcept { return code_; }
    [[nodiscard]] const std::string& detail() const noexcept { return detail_; }

private:
    ErrorCode code_;
    std::string detail_;
};

}  // namespace mfx
