#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "roadpulse/assess.hpp"
#include "roadpulse/mapper.hpp"
#include "roadpulse/types.hpp"

namespace roadpulse {

/// Shortest decimal form that round-trips the exact double ("4", "0.5",
/// "1.0833333333333333"). Keeps report files byte-stable run to run.
std::string format_double(double value);

/// RFC 4180 quoting, applied only when the field needs it.
std::string csv_escape(std::string_view field);

// Each writer returns the complete file body, trailing newline included.

/// Header: highway,phase,tweet_count,avg_daily,intensity. Undefined
/// intensity is the literal NA.
std::string intensity_csv(const std::vector<IntensityRow>& rows);

/// Header: highway,phase,rank,term,doc_freq.
std::string topics_csv(const std::vector<TopicRow>& rows);

/// Header: date,tweets,rainfall_in.
std::string overlay_csv(const OverlaySeries& series);

/// Header: date,count.
std::string daily_csv(const DailySeries& daily);

/// Header: record_id,highway,term_class,phrase,span_start,span_end,neighbor.
/// One row per (record, related highway); neighbor is empty for direct hits.
std::string evidence_csv(const std::vector<MappingResult>& results);

/// GeoJSON FeatureCollection of Point features ([lon, lat] order) carrying a
/// record_id property each.
std::string geojson_feature_collection(const GeoFeatureSet& set);

/// "<highway>_<phase>.geojson" with path-hostile characters mapped to '-'.
std::string geojson_file_name(std::string_view highway_id, std::string_view phase);

} // namespace roadpulse
