#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace roadpulse {

/// Proleptic Gregorian calendar date.
struct CivilDate {
    int year = 1970;
    int month = 1; // 1..12
    int day = 1;   // 1..31

    auto operator<=>(const CivilDate&) const = default;
};

/// Days since 1970-01-01.
std::int64_t days_from_civil(CivilDate d);
CivilDate civil_from_days(std::int64_t days);

bool is_valid_date(CivilDate d);

/// Parses "YYYY-MM-DD". Throws Error(Config) on malformed or impossible dates.
CivilDate parse_civil_date(std::string_view text);
std::string to_string(CivilDate d);

/// Fixed offset from UTC, east positive. Used to interpret instants as
/// local calendar dates for bucketing and phase assignment.
struct UtcOffset {
    int minutes = 0;

    std::int64_t seconds() const noexcept { return std::int64_t{minutes} * 60; }
    auto operator<=>(const UtcOffset&) const = default;
};

/// Parses "+HH:MM", "-HH:MM", "+HHMM", "+HH", "Z" or "0". Throws Error(Config)
/// when malformed or beyond +/-18:00.
UtcOffset parse_utc_offset(std::string_view text);
std::string to_string(UtcOffset offset);

/// Parses an ISO-8601 instant ("2017-08-27T12:00:00Z", offset forms
/// "+HH:MM"/"+HHMM" accepted, fractional seconds ignored, missing designator
/// means UTC) into seconds since the Unix epoch. Throws Error(BadTimestamp).
std::int64_t parse_iso8601(std::string_view text);
std::string format_iso8601_utc(std::int64_t epoch_seconds);

/// Calendar date of an instant in the study timezone.
CivilDate local_date(std::int64_t epoch_seconds, UtcOffset offset);

} // namespace roadpulse
