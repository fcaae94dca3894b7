#include "roadpulse/ingest.hpp"

#include <cmath>
#include <fstream>
#include <istream>

#include <json.hpp>

namespace roadpulse {

void BoundingBox::validate() const {
    if (!(lat_min < lat_max) || !(lon_min < lon_max)) {
        throw Error(ErrorCode::Config, "bounding box requires lat_min < lat_max and lon_min < lon_max");
    }
    if (lat_min < -90.0 || lat_max > 90.0 || lon_min < -180.0 || lon_max > 180.0) {
        throw Error(ErrorCode::Config, "bounding box outside legal coordinate ranges");
    }
}

void TimeWindow::validate() const {
    if (start > end) {
        throw Error(ErrorCode::Config, "time window requires start_date <= end_date");
    }
}

namespace {

const nlohmann::json* find_field(const nlohmann::json& obj, const char* name) {
    const auto it = obj.find(name);
    if (it == obj.end() || it->is_null()) {
        throw Error(ErrorCode::MissingField, std::string("missing field '") + name + "'", name);
    }
    return &*it;
}

std::string string_field(const nlohmann::json& obj, const char* name) {
    const nlohmann::json* v = find_field(obj, name);
    if (v->is_string()) return v->get<std::string>();
    // Corpora in the wild carry numeric ids; accept and stringify them.
    if (v->is_number_integer()) return std::to_string(v->get<std::int64_t>());
    if (v->is_number_unsigned()) return std::to_string(v->get<std::uint64_t>());
    throw Error(ErrorCode::MalformedLine, std::string("field '") + name + "' is not a string", name);
}

double number_field(const nlohmann::json& obj, const char* name) {
    const nlohmann::json* v = find_field(obj, name);
    if (!v->is_number()) {
        throw Error(ErrorCode::MalformedLine, std::string("field '") + name + "' is not a number", name);
    }
    return v->get<double>();
}

} // namespace

TweetRecord parse_record(std::string_view line) {
    const nlohmann::json obj = nlohmann::json::parse(line, nullptr, /*allow_exceptions=*/false);
    if (obj.is_discarded() || !obj.is_object()) {
        throw Error(ErrorCode::MalformedLine, "line is not a JSON object");
    }

    TweetRecord record;
    record.id = string_field(obj, "id");
    if (record.id.empty()) {
        throw Error(ErrorCode::MissingField, "field 'id' is empty", "id");
    }
    record.timestamp_utc = parse_iso8601(string_field(obj, "created_at"));
    record.lat = number_field(obj, "lat");
    record.lon = number_field(obj, "lon");
    if (!std::isfinite(record.lat) || record.lat < -90.0 || record.lat > 90.0) {
        throw Error(ErrorCode::OutOfRangeCoordinate, "lat out of range [-90, 90]", "lat");
    }
    if (!std::isfinite(record.lon) || record.lon < -180.0 || record.lon > 180.0) {
        throw Error(ErrorCode::OutOfRangeCoordinate, "lon out of range [-180, 180]", "lon");
    }
    record.text = string_field(obj, "text");
    return record;
}

std::string serialize_record(const TweetRecord& record) {
    nlohmann::ordered_json obj;
    obj["id"] = record.id;
    obj["created_at"] = format_iso8601_utc(record.timestamp_utc);
    obj["lat"] = record.lat;
    obj["lon"] = record.lon;
    obj["text"] = record.text;
    return obj.dump();
}

std::vector<TweetRecord> filter_records(std::span<const TweetRecord> records, const BoundingBox& bbox,
                                        const TimeWindow& window, UtcOffset offset) {
    bbox.validate();
    window.validate();
    std::vector<TweetRecord> kept;
    for (const TweetRecord& r : records) {
        if (!bbox.contains(r.lat, r.lon)) continue;
        if (!window.contains(local_date(r.timestamp_utc, offset))) continue;
        kept.push_back(r);
    }
    return kept;
}

DailySeries daily_counts(std::span<const TweetRecord> records, const TimeWindow& window, UtcOffset offset) {
    window.validate();
    DailySeries series;
    const std::int64_t first = days_from_civil(window.start);
    const std::int64_t last = days_from_civil(window.end);
    for (std::int64_t day = first; day <= last; ++day) {
        series.counts.emplace(civil_from_days(day), 0);
    }
    for (const TweetRecord& r : records) {
        const auto it = series.counts.find(local_date(r.timestamp_utc, offset));
        if (it != series.counts.end()) ++it->second;
    }
    return series;
}

std::vector<TweetRecord> read_jsonl(std::istream& in, ParseMode mode, IngestStats& stats) {
    std::vector<TweetRecord> records;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        ++stats.lines_read;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue; // blank lines are neither records nor errors
        try {
            records.push_back(parse_record(line));
            ++stats.parsed;
        } catch (const Error& e) {
            if (mode == ParseMode::Strict) {
                throw Error(e.code(), "line " + std::to_string(line_no) + ": " + e.what(), e.field());
            }
            switch (e.code()) {
            case ErrorCode::MissingField: ++stats.skipped_missing_field; break;
            case ErrorCode::OutOfRangeCoordinate: ++stats.skipped_bad_coordinate; break;
            case ErrorCode::BadTimestamp: ++stats.skipped_bad_timestamp; break;
            default: ++stats.skipped_malformed; break;
            }
        }
    }
    return records;
}

std::vector<TweetRecord> read_jsonl_file(const std::string& path, ParseMode mode, IngestStats& stats) {
    std::ifstream in(path);
    if (!in) {
        throw Error(ErrorCode::Io, "cannot open input file '" + path + "'");
    }
    return read_jsonl(in, mode, stats);
}

} // namespace roadpulse
