#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "roadpulse/assess.hpp"
#include "roadpulse/ingest.hpp"
#include "roadpulse/time.hpp"
#include "roadpulse/types.hpp"

namespace roadpulse {

/// Every knob of a full assessment run. Defaults reproduce the Hurricane
/// Harvey / Houston study setup.
struct RunConfig {
    std::string input_path;
    std::optional<std::string> lexicon_path; // empty -> bundled Harvey lexicon
    BoundingBox bbox{29.427926, 30.157266, -95.902705, -94.997805};
    TimeWindow window{CivilDate{2017, 8, 23}, CivilDate{2017, 9, 5}};
    UtcOffset utc_offset{-300}; // Houston, CDT
    PhaseConfig phases = PhaseConfig::harvey_default();
    std::size_t adjacency_window = 1;
    std::size_t top_k = 5;
    std::optional<std::string> stopword_path;  // empty -> bundled list
    std::optional<std::string> rainfall_path;  // empty -> overlay zero-filled
    std::string output_dir = "out";
    ParseMode parse_mode = ParseMode::Lenient;

    /// Throws Error(Config) on violated parameter invariants (top_k >= 1,
    /// bbox/window/phase rules, adjacency_window >= 1, input path set).
    void validate() const;
};

/// Reads run parameters from a JSON document; every key optional except none
/// (flags/defaults fill the rest):
///   { "input", "lexicon", "bbox": [lat_min, lat_max, lon_min, lon_max],
///     "window": {"start", "end"}, "utc_offset", "baseline",
///     "phases": [{"name", "start", "end"}, ...], "adjacency", "top_k",
///     "stopwords", "rainfall", "out", "strict" }
/// Starts from `base` (typically a default RunConfig) and overrides only the
/// keys present. Throws Error(Config) on unknown keys or bad values.
RunConfig load_run_config(const std::string& path, RunConfig base = {});

struct HighwayTotal {
    std::string highway_id;
    std::string display_name;
    std::int64_t mapped = 0;   // records related to this highway, in-window
    std::int64_t unphased = 0; // of those, outside every phase
};

struct RunStats {
    IngestStats ingest;
    std::int64_t records_in_scope = 0; // inside bbox and window
    std::int64_t records_mapped = 0;   // related to at least one highway
    std::vector<HighwayTotal> highways;
    std::vector<CivilDate> missing_rainfall;
    bool rainfall_provided = false;
};

/// Runs ingest -> clean -> map -> assess and writes the report files into
/// config.output_dir: intensity.csv, topics.csv, overlay.csv, daily.csv,
/// evidence.csv, geo/<highway>_<phase>.geojson and summary.md. Deterministic:
/// identical config and inputs give byte-identical files. Throws Error.
RunStats run_assess(const RunConfig& config);

/// Ingest -> clean -> map only; writes evidence.csv into config.output_dir.
/// Ignores phases/top_k/rainfall. Throws Error.
RunStats run_map(const RunConfig& config);

} // namespace roadpulse
