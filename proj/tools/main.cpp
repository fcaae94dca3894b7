// roadpulse: assess disaster impacts on highway corridors from geotagged
// microblog posts. `assess` runs the full pipeline and writes the report
// files; `map` stops after tweet-to-highway mapping and writes evidence.csv.

#include <cstdio>
#include <exception>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "roadpulse/error.hpp"
#include "roadpulse/pipeline.hpp"

namespace {

using roadpulse::Error;
using roadpulse::ErrorCode;
using roadpulse::RunConfig;

roadpulse::BoundingBox parse_bbox_flag(const std::string& text) {
    std::vector<double> values;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t comma = text.find(',', pos);
        std::string part = text.substr(pos, comma == std::string::npos ? comma : comma - pos);
        try {
            std::size_t used = 0;
            values.push_back(std::stod(part, &used));
            if (used != part.size()) throw std::invalid_argument(part);
        } catch (const std::exception&) {
            throw Error(ErrorCode::Config, "--bbox expects four numbers: \"" + part + "\"", "bbox");
        }
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    if (values.size() != 4) {
        throw Error(ErrorCode::Config, "--bbox expects lat_min,lat_max,lon_min,lon_max", "bbox");
    }
    return roadpulse::BoundingBox{values[0], values[1], values[2], values[3]};
}

roadpulse::TimeWindow parse_window_flag(const std::string& text) {
    std::size_t colon = text.find(':');
    if (colon == std::string::npos) {
        throw Error(ErrorCode::Config, "--window expects START:END dates", "window");
    }
    return roadpulse::TimeWindow{roadpulse::parse_civil_date(text.substr(0, colon)),
                                 roadpulse::parse_civil_date(text.substr(colon + 1))};
}

roadpulse::PhaseConfig parse_phases_flag(const std::string& text) {
    roadpulse::PhaseConfig config;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t comma = text.find(',', pos);
        std::string part = text.substr(pos, comma == std::string::npos ? comma : comma - pos);
        std::size_t eq = part.find('=');
        std::size_t colon = part.find(':', eq == std::string::npos ? 0 : eq + 1);
        if (eq == std::string::npos || colon == std::string::npos) {
            throw Error(ErrorCode::Config,
                        "--phases expects name=START:END[,name=START:END...]: \"" + part + "\"",
                        "phases");
        }
        config.phases.push_back(
            roadpulse::Phase{part.substr(0, eq),
                             roadpulse::parse_civil_date(part.substr(eq + 1, colon - eq - 1)),
                             roadpulse::parse_civil_date(part.substr(colon + 1))});
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    if (config.phases.empty()) {
        throw Error(ErrorCode::Config, "--phases expects at least one phase", "phases");
    }
    config.baseline = config.phases.front().name;
    return config;
}

// Flag holders; only values the user actually passed override the config.
struct FlagValues {
    std::string input;
    std::string config_path;
    std::string lexicon;
    bool builtin_harvey = false;
    std::string bbox;
    std::string window;
    std::string utc_offset;
    std::string phases;
    std::size_t adjacency = 1;
    std::size_t top_k = 5;
    std::string stopwords;
    std::string rainfall;
    std::string out;
    bool strict = false;
};

void add_common_flags(CLI::App& cmd, FlagValues& flags, bool full) {
    cmd.add_option("--input", flags.input, "JSON Lines tweet file");
    cmd.add_option("--config", flags.config_path, "JSON run-config file; flags override it");
    auto* lexicon = cmd.add_option("--lexicon", flags.lexicon, "lexicon JSON file");
    cmd.add_flag("--builtin-harvey", flags.builtin_harvey,
                 "use the bundled Hurricane Harvey lexicon (default)")
        ->excludes(lexicon);
    cmd.add_option("--bbox", flags.bbox, "study area as lat_min,lat_max,lon_min,lon_max");
    cmd.add_option("--window", flags.window, "study window as START:END local dates");
    cmd.add_option("--utc-offset", flags.utc_offset, "study timezone, e.g. -05:00");
    cmd.add_option("--adjacency", flags.adjacency,
                   "token window for indirect-term neighbor checks (>= 1)");
    cmd.add_option("--stopwords", flags.stopwords, "stopword file, one word per line");
    cmd.add_option("--out", flags.out, "output directory");
    cmd.add_flag("--strict", flags.strict, "fail on the first malformed input line");
    if (full) {
        cmd.add_option("--phases", flags.phases,
                       "disaster phases as name=START:END,... (first = baseline)");
        cmd.add_option("--top-k", flags.top_k, "terms per topic table cell");
        cmd.add_option("--rainfall", flags.rainfall, "daily rainfall CSV (date,inches)");
    }
}

RunConfig build_config(const CLI::App& cmd, const FlagValues& flags) {
    RunConfig config;
    if (cmd.count("--config")) config = roadpulse::load_run_config(flags.config_path, config);
    if (cmd.count("--input")) config.input_path = flags.input;
    if (cmd.count("--lexicon")) config.lexicon_path = flags.lexicon;
    if (cmd.count("--builtin-harvey")) config.lexicon_path.reset();
    if (cmd.count("--bbox")) config.bbox = parse_bbox_flag(flags.bbox);
    if (cmd.count("--window")) config.window = parse_window_flag(flags.window);
    if (cmd.count("--utc-offset")) config.utc_offset = roadpulse::parse_utc_offset(flags.utc_offset);
    if (cmd.count("--adjacency")) config.adjacency_window = flags.adjacency;
    if (cmd.count("--stopwords")) config.stopword_path = flags.stopwords;
    if (cmd.count("--out")) config.output_dir = flags.out;
    if (cmd.count("--strict")) config.parse_mode = roadpulse::ParseMode::Strict;
    if (cmd.get_option_no_throw("--phases") && cmd.count("--phases")) {
        config.phases = parse_phases_flag(flags.phases);
    }
    if (cmd.get_option_no_throw("--top-k") && cmd.count("--top-k")) config.top_k = flags.top_k;
    if (cmd.get_option_no_throw("--rainfall") && cmd.count("--rainfall")) {
        config.rainfall_path = flags.rainfall;
    }
    return config;
}

void print_stats(const roadpulse::RunStats& stats, const RunConfig& config) {
    std::printf("parsed %lld records (%lld lines skipped), %lld in study scope, %lld mapped\n",
                static_cast<long long>(stats.ingest.parsed),
                static_cast<long long>(stats.ingest.skipped_total()),
                static_cast<long long>(stats.records_in_scope),
                static_cast<long long>(stats.records_mapped));
    for (const auto& total : stats.highways) {
        std::printf("  %-6s %-22s %lld\n", total.highway_id.c_str(), total.display_name.c_str(),
                    static_cast<long long>(total.mapped));
    }
    std::printf("report written to %s\n", config.output_dir.c_str());
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Highway impact assessment from geotagged microblog corpora"};
    app.require_subcommand(1);

    FlagValues assess_flags;
    CLI::App* assess = app.add_subcommand("assess", "run the full assessment pipeline");
    add_common_flags(*assess, assess_flags, /*full=*/true);

    FlagValues map_flags;
    CLI::App* map = app.add_subcommand("map", "map tweets to highways and dump evidence.csv");
    add_common_flags(*map, map_flags, /*full=*/false);

    CLI11_PARSE(app, argc, argv);

    try {
        if (assess->parsed()) {
            RunConfig config = build_config(*assess, assess_flags);
            roadpulse::RunStats stats = roadpulse::run_assess(config);
            print_stats(stats, config);
        } else {
            RunConfig config = build_config(*map, map_flags);
            roadpulse::RunStats stats = roadpulse::run_map(config);
            print_stats(stats, config);
        }
    } catch (const Error& e) {
        std::fprintf(stderr, "roadpulse: error: %s\n", e.what());
        return 1;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "roadpulse: unexpected error: %s\n", e.what());
        return 1;
    }
    return 0;
}
