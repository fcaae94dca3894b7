#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace roadpulse {

enum class ErrorCode {
    MalformedLine,
    MissingField,
    OutOfRangeCoordinate,
    BadTimestamp,
    LexiconParse,
    DuplicateHighwayId,
    CrossHighwayDirectTermCollision,
    EmptyTermSet,
    DegeneratePolyline,
    RainfallParse,
    StopwordParse,
    Config,
    Io,
};

std::string_view to_string(ErrorCode code);

/// Single exception type for the whole library. `code()` identifies the
/// failure class and `field()` names the offending input field when one
/// exists (e.g. "lat" for a coordinate out of range).
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, std::string message, std::string field = {})
        : std::runtime_error(std::move(message)), code_(code), field_(std::move(field)) {}

    ErrorCode code() const noexcept { return code_; }
    const std::string& field() const noexcept { return field_; }

private:
    ErrorCode code_;
    std::string field_;
};

} // namespace roadpulse
