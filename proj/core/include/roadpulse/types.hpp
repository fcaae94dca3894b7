#pragma once

#include <cstdint>
#include <map>
#include <string>

#include "roadpulse/time.hpp"

namespace roadpulse {

/// One geotagged post.
struct TweetRecord {
    std::string id;
    std::int64_t timestamp_utc = 0; // seconds since the Unix epoch
    double lat = 0.0;               // degrees, [-90, 90]
    double lon = 0.0;               // degrees, [-180, 180]
    std::string text;

    bool operator==(const TweetRecord&) const = default;
};

struct LatLon {
    double lat = 0.0;
    double lon = 0.0;

    bool operator==(const LatLon&) const = default;
};

/// Latitude/longitude rectangle delimiting the study area. Bounds inclusive.
struct BoundingBox {
    double lat_min = 0.0;
    double lat_max = 0.0;
    double lon_min = 0.0;
    double lon_max = 0.0;

    /// Throws Error(Config) unless lat_min < lat_max, lon_min < lon_max and
    /// all bounds are legal coordinates.
    void validate() const;

    bool contains(double lat, double lon) const noexcept {
        return lat >= lat_min && lat <= lat_max && lon >= lon_min && lon <= lon_max;
    }
};

/// Inclusive range of calendar dates, interpreted in the study timezone.
struct TimeWindow {
    CivilDate start;
    CivilDate end;

    /// Throws Error(Config) unless start <= end.
    void validate() const;

    bool contains(CivilDate d) const noexcept { return d >= start && d <= end; }
    std::int64_t length_days() const noexcept { return days_from_civil(end) - days_from_civil(start) + 1; }
};

/// Per-day counts over a window, zero-filled, keys strictly increasing.
struct DailySeries {
    std::map<CivilDate, std::int64_t> counts;

    std::int64_t total() const noexcept {
        std::int64_t sum = 0;
        for (const auto& [date, n] : counts) sum += n;
        return sum;
    }
};

} // namespace roadpulse
