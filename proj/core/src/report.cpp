#include "roadpulse/report.hpp"

#include <charconv>

#include <json.hpp>

namespace roadpulse {

std::string format_double(double value) {
    char buffer[64];
    auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value);
    return std::string(buffer, ptr);
}

std::string csv_escape(std::string_view field) {
    bool needs_quotes = field.find_first_of(",\"\r\n") != std::string_view::npos;
    if (!needs_quotes) return std::string(field);
    std::string out;
    out.reserve(field.size() + 2);
    out.push_back('"');
    for (char c : field) {
        if (c == '"') out.push_back('"');
        out.push_back(c);
    }
    out.push_back('"');
    return out;
}

std::string intensity_csv(const std::vector<IntensityRow>& rows) {
    std::string out = "highway,phase,tweet_count,avg_daily,intensity\n";
    for (const IntensityRow& row : rows) {
        out += csv_escape(row.highway_id);
        out.push_back(',');
        out += csv_escape(row.phase);
        out.push_back(',');
        out += std::to_string(row.tweet_count);
        out.push_back(',');
        out += format_double(row.avg_daily);
        out.push_back(',');
        out += row.intensity ? format_double(*row.intensity) : "NA";
        out.push_back('\n');
    }
    return out;
}

std::string topics_csv(const std::vector<TopicRow>& rows) {
    std::string out = "highway,phase,rank,term,doc_freq\n";
    for (const TopicRow& row : rows) {
        out += csv_escape(row.highway_id);
        out.push_back(',');
        out += csv_escape(row.phase);
        out.push_back(',');
        out += std::to_string(row.rank);
        out.push_back(',');
        out += csv_escape(row.term);
        out.push_back(',');
        out += std::to_string(row.doc_freq);
        out.push_back('\n');
    }
    return out;
}

std::string overlay_csv(const OverlaySeries& series) {
    std::string out = "date,tweets,rainfall_in\n";
    for (const OverlayRow& row : series.rows) {
        out += to_string(row.date);
        out.push_back(',');
        out += std::to_string(row.tweets);
        out.push_back(',');
        out += format_double(row.rainfall_in);
        out.push_back('\n');
    }
    return out;
}

std::string daily_csv(const DailySeries& daily) {
    std::string out = "date,count\n";
    for (const auto& [date, count] : daily.counts) {
        out += to_string(date);
        out.push_back(',');
        out += std::to_string(count);
        out.push_back('\n');
    }
    return out;
}

std::string evidence_csv(const std::vector<MappingResult>& results) {
    std::string out = "record_id,highway,term_class,phrase,span_start,span_end,neighbor\n";
    for (const MappingResult& result : results) {
        for (const MatchEvidence& item : result.evidence) {
            out += csv_escape(result.record_id);
            out.push_back(',');
            out += csv_escape(item.highway_id);
            out.push_back(',');
            out += to_string(item.cls);
            out.push_back(',');
            out += csv_escape(item.phrase);
            out.push_back(',');
            out += std::to_string(item.begin);
            out.push_back(',');
            out += std::to_string(item.end);
            out.push_back(',');
            if (item.neighbor) out += csv_escape(*item.neighbor);
            out.push_back('\n');
        }
    }
    return out;
}

std::string geojson_feature_collection(const GeoFeatureSet& set) {
    nlohmann::ordered_json doc;
    doc["type"] = "FeatureCollection";
    doc["features"] = nlohmann::ordered_json::array();
    for (const GeoPoint& point : set.points) {
        nlohmann::ordered_json feature;
        feature["type"] = "Feature";
        feature["geometry"]["type"] = "Point";
        feature["geometry"]["coordinates"] = {point.lon, point.lat};
        feature["properties"]["record_id"] = point.record_id;
        doc["features"].push_back(std::move(feature));
    }
    return doc.dump(2) + "\n";
}

std::string geojson_file_name(std::string_view highway_id, std::string_view phase) {
    std::string name;
    name.reserve(highway_id.size() + phase.size() + 9);
    auto append_safe = [&](std::string_view part) {
        for (char c : part) {
            bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') ||
                      c == '-' || c == '.';
            name.push_back(ok ? c : '-');
        }
    };
    append_safe(highway_id);
    name.push_back('_');
    append_safe(phase);
    name += ".geojson";
    return name;
}

} // namespace roadpulse
