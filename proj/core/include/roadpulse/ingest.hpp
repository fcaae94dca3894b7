#pragma once

#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "roadpulse/error.hpp"
#include "roadpulse/types.hpp"

namespace roadpulse {

/// Parses one JSON Lines record with fields `id` (string), `created_at`
/// (ISO-8601), `lat` (number), `lon` (number), `text` (string).
///
/// Throws Error with code MalformedLine (unparseable or wrongly typed),
/// MissingField, OutOfRangeCoordinate or BadTimestamp; `field()` names the
/// offending field where one exists.
TweetRecord parse_record(std::string_view line);

/// Inverse of parse_record for valid records: one compact JSON object.
std::string serialize_record(const TweetRecord& record);

/// Keeps exactly the records inside the bounding box whose local calendar
/// date falls inside the window. Order preserved; empty output is legal.
std::vector<TweetRecord> filter_records(std::span<const TweetRecord> records, const BoundingBox& bbox,
                                        const TimeWindow& window, UtcOffset offset);

/// Zero-filled per-day counts over the window. Callers pass records already
/// filtered to the window; records bucketing outside it are ignored.
DailySeries daily_counts(std::span<const TweetRecord> records, const TimeWindow& window, UtcOffset offset);

enum class ParseMode { Lenient, Strict };

struct IngestStats {
    std::size_t lines_read = 0;
    std::size_t parsed = 0;
    std::size_t skipped_malformed = 0;
    std::size_t skipped_missing_field = 0;
    std::size_t skipped_bad_coordinate = 0;
    std::size_t skipped_bad_timestamp = 0;

    std::size_t skipped_total() const noexcept {
        return skipped_malformed + skipped_missing_field + skipped_bad_coordinate + skipped_bad_timestamp;
    }
};

/// Reads a whole JSON Lines stream. Lenient mode skips bad lines and counts
/// them per failure class; strict mode rethrows with the 1-based line number
/// prepended. Blank lines are ignored.
std::vector<TweetRecord> read_jsonl(std::istream& in, ParseMode mode, IngestStats& stats);

/// File-opening wrapper around read_jsonl. Throws Error(Io) when the path
/// cannot be opened.
std::vector<TweetRecord> read_jsonl_file(const std::string& path, ParseMode mode, IngestStats& stats);

} // namespace roadpulse
