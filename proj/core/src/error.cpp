#include "roadpulse/error.hpp"

namespace roadpulse {

std::string_view to_string(ErrorCode code) {
    switch (code) {
    case ErrorCode::MalformedLine: return "malformed line";
    case ErrorCode::MissingField: return "missing field";
    case ErrorCode::OutOfRangeCoordinate: return "coordinate out of range";
    case ErrorCode::BadTimestamp: return "bad timestamp";
    case ErrorCode::LexiconParse: return "lexicon parse error";
    case ErrorCode::DuplicateHighwayId: return "duplicate highway id";
    case ErrorCode::CrossHighwayDirectTermCollision: return "direct term shared across highways";
    case ErrorCode::EmptyTermSet: return "empty term set";
    case ErrorCode::DegeneratePolyline: return "degenerate polyline";
    case ErrorCode::RainfallParse: return "rainfall parse error";
    case ErrorCode::StopwordParse: return "stopword parse error";
    case ErrorCode::Config: return "configuration error";
    case ErrorCode::Io: return "i/o error";
    }
    return "unknown error";
}

} // namespace roadpulse
