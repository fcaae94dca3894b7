#include "roadpulse/pipeline.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "roadpulse/clean.hpp"
#include "roadpulse/error.hpp"
#include "roadpulse/lexicon.hpp"
#include "roadpulse/report.hpp"

namespace roadpulse {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

void write_file(const fs::path& path, std::string_view content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw Error(ErrorCode::Io, "cannot write " + path.string(), path.string());
    }
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) {
        throw Error(ErrorCode::Io, "failed writing " + path.string(), path.string());
    }
}

struct LoadedInputs {
    const Lexicon* lexicon = nullptr;
    Lexicon owned_lexicon;           // backing storage when loaded from file
    const Stoplist* stoplist = nullptr;
    Stoplist owned_stoplist;
};

LoadedInputs load_inputs(const RunConfig& config) {
    LoadedInputs inputs;
    if (config.lexicon_path) {
        inputs.owned_lexicon = load_lexicon(*config.lexicon_path);
        inputs.lexicon = &inputs.owned_lexicon;
    } else {
        inputs.lexicon = &builtin_harvey_lexicon();
    }
    if (config.stopword_path) {
        inputs.owned_stoplist = Stoplist::load_file(*config.stopword_path);
        inputs.stoplist = &inputs.owned_stoplist;
    } else {
        inputs.stoplist = &Stoplist::bundled();
    }
    return inputs;
}

struct PipelineRun {
    std::vector<TweetRecord> filtered;
    std::vector<CleanedTweet> cleaned;
    CorpusMapping mapping;
    RunStats stats;
};

PipelineRun ingest_clean_map(const RunConfig& config, const Lexicon& lexicon,
                             const Stoplist& stoplist) {
    PipelineRun run;
    std::vector<TweetRecord> records =
        read_jsonl_file(config.input_path, config.parse_mode, run.stats.ingest);
    run.filtered = filter_records(records, config.bbox, config.window, config.utc_offset);
    run.stats.records_in_scope = static_cast<std::int64_t>(run.filtered.size());

    run.cleaned.reserve(run.filtered.size());
    for (const TweetRecord& record : run.filtered) {
        run.cleaned.push_back(clean_text(record, stoplist));
    }
    run.mapping =
        map_corpus(run.cleaned, lexicon, MappingConfig{config.adjacency_window});

    for (const MappingResult& result : run.mapping.results) {
        if (!result.evidence.empty()) ++run.stats.records_mapped;
    }
    run.stats.highways.reserve(lexicon.entries.size());
    for (std::size_t h = 0; h < lexicon.entries.size(); ++h) {
        HighwayTotal total;
        total.highway_id = lexicon.entries[h].id;
        total.display_name = lexicon.entries[h].display_name;
        total.mapped = static_cast<std::int64_t>(run.mapping.by_highway[h].size());
        run.stats.highways.push_back(std::move(total));
    }
    return run;
}

std::string describe_phases(const PhaseConfig& phases) {
    std::string out;
    for (std::size_t i = 0; i < phases.phases.size(); ++i) {
        const Phase& phase = phases.phases[i];
        if (i > 0) out += "; ";
        out += phase.name + " " + to_string(phase.start) + ".." + to_string(phase.end);
        if (phase.name == phases.baseline) out += " (baseline)";
    }
    return out;
}

std::string summary_md(const RunConfig& config, const RunStats& stats) {
    std::string out = "# Assessment summary\n\n## Parameters\n\n";
    out += "- input: " + config.input_path + "\n";
    out += "- lexicon: " +
           (config.lexicon_path ? *config.lexicon_path : std::string("bundled Harvey lexicon")) +
           "\n";
    out += "- bounding box: lat [" + format_double(config.bbox.lat_min) + ", " +
           format_double(config.bbox.lat_max) + "], lon [" + format_double(config.bbox.lon_min) +
           ", " + format_double(config.bbox.lon_max) + "]\n";
    out += "- window: " + to_string(config.window.start) + " to " + to_string(config.window.end) +
           " (local dates, inclusive)\n";
    out += "- utc offset: " + to_string(config.utc_offset) + "\n";
    out += "- phases: " + describe_phases(config.phases) + "\n";
    out += "- adjacency window: " + std::to_string(config.adjacency_window) + "\n";
    out += "- top k: " + std::to_string(config.top_k) + "\n";
    out += "- stopwords: " +
           (config.stopword_path ? *config.stopword_path : std::string("bundled list")) + "\n";
    out += "- rainfall: " +
           (config.rainfall_path ? *config.rainfall_path
                                 : std::string("none provided (overlay zero-filled)")) +
           "\n";
    out += "- output dir: " + config.output_dir + "\n";
    out += std::string("- parse mode: ") +
           (config.parse_mode == ParseMode::Strict ? "strict" : "lenient") + "\n";

    out += "\n## Corpus\n\n";
    out += "- lines read: " + std::to_string(stats.ingest.lines_read) + "\n";
    out += "- records parsed: " + std::to_string(stats.ingest.parsed) + "\n";
    if (config.parse_mode == ParseMode::Lenient) {
        out += "- lines skipped: " + std::to_string(stats.ingest.skipped_total()) + " (malformed " +
               std::to_string(stats.ingest.skipped_malformed) + ", missing field " +
               std::to_string(stats.ingest.skipped_missing_field) + ", bad coordinate " +
               std::to_string(stats.ingest.skipped_bad_coordinate) + ", bad timestamp " +
               std::to_string(stats.ingest.skipped_bad_timestamp) + ")\n";
    }
    out += "- records in study area and window: " + std::to_string(stats.records_in_scope) + "\n";
    out +=
        "- records mapped to at least one highway: " + std::to_string(stats.records_mapped) + "\n";

    out += "\n## Highways\n\n";
    out += "| highway | name | mapped records |\n|---|---|---|\n";
    for (const HighwayTotal& total : stats.highways) {
        out += "| " + total.highway_id + " | " + total.display_name + " | " +
               std::to_string(total.mapped) + " |\n";
    }
    bool any_unphased = false;
    for (const HighwayTotal& total : stats.highways) {
        if (total.unphased > 0) any_unphased = true;
    }
    if (any_unphased) {
        out += "\nMapped records outside every phase:\n";
        for (const HighwayTotal& total : stats.highways) {
            if (total.unphased > 0) {
                out += "- " + total.highway_id + ": " + std::to_string(total.unphased) + "\n";
            }
        }
    }
    if (!stats.missing_rainfall.empty()) {
        out += "\nRainfall dates missing (zero-filled): ";
        for (std::size_t i = 0; i < stats.missing_rainfall.size(); ++i) {
            if (i > 0) out += ", ";
            out += to_string(stats.missing_rainfall[i]);
        }
        out += "\n";
    }

    out += "\n## Files\n\n";
    out += "- intensity.csv: per-highway, per-phase counts and intensity\n";
    out += "- topics.csv: top-" + std::to_string(config.top_k) +
           " terms per highway and phase by document frequency\n";
    out += "- overlay.csv: corpus-wide daily tweet counts with rainfall\n";
    out += "- daily.csv: corpus-wide daily tweet counts\n";
    out += "- evidence.csv: matched phrase behind every record-highway link\n";
    out += "- geo/: one GeoJSON point collection per highway and phase\n";
    return out;
}

} // namespace

void RunConfig::validate() const {
    if (input_path.empty()) {
        throw Error(ErrorCode::Config, "input path is required", "input");
    }
    bbox.validate();
    window.validate();
    phases.validate();
    MappingConfig{adjacency_window}.validate();
    if (top_k < 1) {
        throw Error(ErrorCode::Config, "top_k must be >= 1", "top-k");
    }
    if (output_dir.empty()) {
        throw Error(ErrorCode::Config, "output directory is required", "out");
    }
}

RunConfig load_run_config(const std::string& path, RunConfig base) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error(ErrorCode::Io, "cannot open config file: " + path, path);
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    json doc = json::parse(buffer.str(), nullptr, /*allow_exceptions=*/false);
    if (doc.is_discarded() || !doc.is_object()) {
        throw Error(ErrorCode::Config, path + ": config is not a JSON object", path);
    }

    auto expect_string = [&](const json& value, const char* key) -> std::string {
        if (!value.is_string()) {
            throw Error(ErrorCode::Config, path + ": \"" + key + "\" must be a string", key);
        }
        return value.get<std::string>();
    };
    auto expect_size = [&](const json& value, const char* key) -> std::size_t {
        if (!value.is_number_unsigned() || value.get<std::uint64_t>() < 1) {
            throw Error(ErrorCode::Config, path + ": \"" + key + "\" must be a positive integer",
                        key);
        }
        return static_cast<std::size_t>(value.get<std::uint64_t>());
    };

    for (const auto& [key, value] : doc.items()) {
        if (key == "input") {
            base.input_path = expect_string(value, "input");
        } else if (key == "lexicon") {
            base.lexicon_path = expect_string(value, "lexicon");
        } else if (key == "bbox") {
            if (!value.is_array() || value.size() != 4 ||
                !std::all_of(value.begin(), value.end(),
                             [](const json& v) { return v.is_number(); })) {
                throw Error(ErrorCode::Config,
                            path + ": \"bbox\" must be [lat_min, lat_max, lon_min, lon_max]",
                            "bbox");
            }
            base.bbox = BoundingBox{value[0].get<double>(), value[1].get<double>(),
                                    value[2].get<double>(), value[3].get<double>()};
        } else if (key == "window") {
            if (!value.is_object() || !value.contains("start") || !value.contains("end")) {
                throw Error(ErrorCode::Config, path + ": \"window\" must be {start, end}",
                            "window");
            }
            base.window = TimeWindow{parse_civil_date(expect_string(value["start"], "window.start")),
                                     parse_civil_date(expect_string(value["end"], "window.end"))};
        } else if (key == "utc_offset") {
            base.utc_offset = parse_utc_offset(expect_string(value, "utc_offset"));
        } else if (key == "phases") {
            if (!value.is_array() || value.empty()) {
                throw Error(ErrorCode::Config,
                            path + ": \"phases\" must be a non-empty array of {name, start, end}",
                            "phases");
            }
            PhaseConfig phases;
            for (const json& item : value) {
                if (!item.is_object() || !item.contains("name") || !item.contains("start") ||
                    !item.contains("end")) {
                    throw Error(ErrorCode::Config,
                                path + ": each phase needs {name, start, end}", "phases");
                }
                phases.phases.push_back(
                    Phase{expect_string(item["name"], "phases.name"),
                          parse_civil_date(expect_string(item["start"], "phases.start")),
                          parse_civil_date(expect_string(item["end"], "phases.end"))});
            }
            phases.baseline = phases.phases.front().name;
            base.phases = std::move(phases);
        } else if (key == "baseline") {
            base.phases.baseline = expect_string(value, "baseline");
        } else if (key == "adjacency") {
            base.adjacency_window = expect_size(value, "adjacency");
        } else if (key == "top_k") {
            base.top_k = expect_size(value, "top_k");
        } else if (key == "stopwords") {
            base.stopword_path = expect_string(value, "stopwords");
        } else if (key == "rainfall") {
            base.rainfall_path = expect_string(value, "rainfall");
        } else if (key == "out") {
            base.output_dir = expect_string(value, "out");
        } else if (key == "strict") {
            if (!value.is_boolean()) {
                throw Error(ErrorCode::Config, path + ": \"strict\" must be a boolean", "strict");
            }
            base.parse_mode = value.get<bool>() ? ParseMode::Strict : ParseMode::Lenient;
        } else {
            throw Error(ErrorCode::Config, path + ": unknown config key \"" + key + "\"", key);
        }
    }
    return base;
}

RunStats run_assess(const RunConfig& config) {
    config.validate();
    LoadedInputs inputs = load_inputs(config);
    const Lexicon& lexicon = *inputs.lexicon;

    PipelineRun run = ingest_clean_map(config, lexicon, *inputs.stoplist);

    DailySeries daily = daily_counts(run.filtered, config.window, config.utc_offset);
    PhaseCells cells =
        partition_cells(run.filtered, run.mapping, lexicon, config.phases, config.utc_offset);
    for (std::size_t h = 0; h < run.stats.highways.size(); ++h) {
        run.stats.highways[h].unphased = cells.unphased_by_highway[h];
    }

    std::vector<IntensityRow> intensity = intensity_table(cells, lexicon, config.phases);
    std::vector<TopicRow> topics =
        topic_table(cells, run.cleaned, lexicon, config.phases, config.top_k);
    std::vector<GeoFeatureSet> geo = geo_features(cells, run.filtered, lexicon, config.phases);

    std::map<CivilDate, double> rainfall;
    if (config.rainfall_path) {
        rainfall = load_rainfall_csv(*config.rainfall_path);
        run.stats.rainfall_provided = true;
    }
    OverlaySeries overlay = overlay_series(daily, rainfall);
    if (config.rainfall_path) {
        run.stats.missing_rainfall = overlay.missing_rainfall;
    }

    fs::path out_dir(config.output_dir);
    std::error_code ec;
    fs::create_directories(out_dir / "geo", ec);
    if (ec) {
        throw Error(ErrorCode::Io, "cannot create output directory " + (out_dir / "geo").string(),
                    config.output_dir);
    }

    write_file(out_dir / "intensity.csv", intensity_csv(intensity));
    write_file(out_dir / "topics.csv", topics_csv(topics));
    write_file(out_dir / "overlay.csv", overlay_csv(overlay));
    write_file(out_dir / "daily.csv", daily_csv(daily));
    write_file(out_dir / "evidence.csv", evidence_csv(run.mapping.results));
    for (const GeoFeatureSet& set : geo) {
        write_file(out_dir / "geo" / geojson_file_name(set.highway_id, set.phase),
                   geojson_feature_collection(set));
    }
    write_file(out_dir / "summary.md", summary_md(config, run.stats));
    return run.stats;
}

RunStats run_map(const RunConfig& config) {
    config.validate();
    LoadedInputs inputs = load_inputs(config);

    PipelineRun run = ingest_clean_map(config, *inputs.lexicon, *inputs.stoplist);

    fs::path out_dir(config.output_dir);
    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (ec) {
        throw Error(ErrorCode::Io, "cannot create output directory " + out_dir.string(),
                    config.output_dir);
    }
    write_file(out_dir / "evidence.csv", evidence_csv(run.mapping.results));
    return run.stats;
}

} // namespace roadpulse
