#include "roadpulse/assess.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <unordered_map>

#include "roadpulse/error.hpp"

namespace roadpulse {

int Phase::length_days() const {
    return static_cast<int>(days_from_civil(end) - days_from_civil(start)) + 1;
}

bool Phase::contains(CivilDate date) const {
    return start <= date && date <= end;
}

PhaseConfig PhaseConfig::harvey_default() {
    PhaseConfig config;
    config.phases = {
        Phase{"pre-peak", CivilDate{2017, 8, 23}, CivilDate{2017, 8, 25}},
        Phase{"peak", CivilDate{2017, 8, 26}, CivilDate{2017, 8, 30}},
        Phase{"post-peak", CivilDate{2017, 8, 31}, CivilDate{2017, 9, 5}},
    };
    config.baseline = "pre-peak";
    return config;
}

void PhaseConfig::validate() const {
    if (phases.empty()) {
        throw Error(ErrorCode::Config, "at least one phase is required", "phases");
    }
    std::unordered_set<std::string> names;
    for (std::size_t i = 0; i < phases.size(); ++i) {
        const Phase& phase = phases[i];
        if (phase.name.empty()) {
            throw Error(ErrorCode::Config, "phase names must be non-empty", "phases");
        }
        if (!names.insert(phase.name).second) {
            throw Error(ErrorCode::Config, "duplicate phase name \"" + phase.name + "\"", "phases");
        }
        if (!is_valid_date(phase.start) || !is_valid_date(phase.end) || phase.end < phase.start) {
            throw Error(ErrorCode::Config, "phase \"" + phase.name + "\" has an invalid date range",
                        "phases");
        }
        if (i > 0 && phase.start <= phases[i - 1].end) {
            throw Error(ErrorCode::Config,
                        "phases must be ordered and non-overlapping: \"" + phases[i - 1].name +
                            "\" and \"" + phase.name + "\"",
                        "phases");
        }
    }
    if (baseline != phases.front().name) {
        throw Error(ErrorCode::Config,
                    "baseline phase \"" + baseline + "\" must be the first phase", "phases");
    }
}

const Phase* PhaseConfig::find(std::string_view name) const {
    for (const Phase& phase : phases) {
        if (phase.name == name) return &phase;
    }
    return nullptr;
}

std::optional<std::string> assign_phase(CivilDate local_date, const PhaseConfig& phases) {
    for (const Phase& phase : phases.phases) {
        if (phase.contains(local_date)) return phase.name;
    }
    return std::nullopt;
}

std::optional<std::string> assign_phase(const TweetRecord& record, const PhaseConfig& phases,
                                        UtcOffset offset) {
    return assign_phase(local_date(record.timestamp_utc, offset), phases);
}

PhaseCells partition_cells(const std::vector<TweetRecord>& records, const CorpusMapping& mapping,
                           const Lexicon& lexicon, const PhaseConfig& phases, UtcOffset offset) {
    phases.validate();
    if (records.size() != mapping.results.size()) {
        throw Error(ErrorCode::Config, "records and mapping results must be parallel");
    }
    std::unordered_map<std::string_view, std::size_t> entry_index;
    for (std::size_t h = 0; h < lexicon.entries.size(); ++h) {
        entry_index.emplace(lexicon.entries[h].id, h);
    }

    PhaseCells cells;
    cells.records_by_cell.assign(lexicon.entries.size(),
                                 std::vector<std::vector<std::size_t>>(phases.phases.size()));
    cells.unphased_by_highway.assign(lexicon.entries.size(), 0);

    for (std::size_t i = 0; i < records.size(); ++i) {
        if (mapping.results[i].evidence.empty()) continue;
        CivilDate date = local_date(records[i].timestamp_utc, offset);
        std::optional<std::size_t> phase_index;
        for (std::size_t p = 0; p < phases.phases.size(); ++p) {
            if (phases.phases[p].contains(date)) {
                phase_index = p;
                break;
            }
        }
        for (const MatchEvidence& item : mapping.results[i].evidence) {
            auto it = entry_index.find(item.highway_id);
            if (it == entry_index.end()) continue;
            if (phase_index) {
                cells.records_by_cell[it->second][*phase_index].push_back(i);
            } else {
                ++cells.unphased_by_highway[it->second];
            }
        }
    }
    return cells;
}

std::vector<IntensityRow> intensity_table(const PhaseCells& cells, const Lexicon& lexicon,
                                          const PhaseConfig& phases) {
    std::vector<IntensityRow> rows;
    rows.reserve(lexicon.entries.size() * phases.phases.size());
    std::int64_t baseline_days = phases.phases.front().length_days();
    for (std::size_t h = 0; h < lexicon.entries.size(); ++h) {
        std::int64_t baseline_count =
            static_cast<std::int64_t>(cells.records_by_cell[h][0].size());
        for (std::size_t p = 0; p < phases.phases.size(); ++p) {
            const Phase& phase = phases.phases[p];
            IntensityRow row;
            row.highway_id = lexicon.entries[h].id;
            row.phase = phase.name;
            row.tweet_count = static_cast<std::int64_t>(cells.records_by_cell[h][p].size());
            std::int64_t phase_days = phase.length_days();
            row.avg_daily = static_cast<double>(row.tweet_count) / static_cast<double>(phase_days);
            if (baseline_count > 0) {
                // Integer cross-product form of (count/days) / (base/base_days):
                // scaling every count by the same integer cancels exactly, so
                // intensity stays bit-identical.
                row.intensity = static_cast<double>(row.tweet_count * baseline_days) /
                                static_cast<double>(baseline_count * phase_days);
            }
            rows.push_back(std::move(row));
        }
    }
    return rows;
}

std::vector<TermCount> top_terms(const std::vector<const CleanedTweet*>& tweets, std::size_t k,
                                 const std::unordered_set<std::string>& excluded) {
    std::unordered_map<std::string, std::int64_t> doc_freq;
    std::unordered_set<std::string> seen;
    for (const CleanedTweet* tweet : tweets) {
        seen.clear();
        for (const std::string& token : tweet->tokens) {
            if (excluded.count(token) || !seen.insert(token).second) continue;
            ++doc_freq[token];
        }
    }
    std::vector<TermCount> counts;
    counts.reserve(doc_freq.size());
    for (auto& [term, freq] : doc_freq) {
        counts.push_back(TermCount{term, freq});
    }
    std::sort(counts.begin(), counts.end(), [](const TermCount& a, const TermCount& b) {
        return a.doc_freq != b.doc_freq ? a.doc_freq > b.doc_freq : a.term < b.term;
    });
    if (counts.size() > k) counts.resize(k);
    return counts;
}

std::vector<TopicRow> topic_table(const PhaseCells& cells, const std::vector<CleanedTweet>& cleaned,
                                  const Lexicon& lexicon, const PhaseConfig& phases,
                                  std::size_t k) {
    std::vector<TopicRow> rows;
    for (std::size_t h = 0; h < lexicon.entries.size(); ++h) {
        std::unordered_set<std::string> excluded = lexicon.entries[h].search_tokens();
        for (std::size_t p = 0; p < phases.phases.size(); ++p) {
            std::vector<const CleanedTweet*> cell;
            cell.reserve(cells.records_by_cell[h][p].size());
            for (std::size_t index : cells.records_by_cell[h][p]) {
                cell.push_back(&cleaned[index]);
            }
            std::vector<TermCount> top = top_terms(cell, k, excluded);
            for (std::size_t r = 0; r < top.size(); ++r) {
                rows.push_back(TopicRow{lexicon.entries[h].id, phases.phases[p].name, r + 1,
                                        std::move(top[r].term), top[r].doc_freq});
            }
        }
    }
    return rows;
}

std::vector<GeoFeatureSet> geo_features(const PhaseCells& cells,
                                        const std::vector<TweetRecord>& records,
                                        const Lexicon& lexicon, const PhaseConfig& phases) {
    std::vector<GeoFeatureSet> sets;
    sets.reserve(lexicon.entries.size() * phases.phases.size());
    for (std::size_t h = 0; h < lexicon.entries.size(); ++h) {
        for (std::size_t p = 0; p < phases.phases.size(); ++p) {
            GeoFeatureSet set;
            set.highway_id = lexicon.entries[h].id;
            set.phase = phases.phases[p].name;
            set.points.reserve(cells.records_by_cell[h][p].size());
            for (std::size_t index : cells.records_by_cell[h][p]) {
                const TweetRecord& record = records[index];
                set.points.push_back(GeoPoint{record.lat, record.lon, record.id});
            }
            sets.push_back(std::move(set));
        }
    }
    return sets;
}

OverlaySeries overlay_series(const DailySeries& daily,
                             const std::map<CivilDate, double>& rainfall) {
    OverlaySeries series;
    series.rows.reserve(daily.counts.size());
    for (const auto& [date, count] : daily.counts) {
        OverlayRow row;
        row.date = date;
        row.tweets = count;
        if (auto it = rainfall.find(date); it != rainfall.end()) {
            row.rainfall_in = it->second;
        } else {
            series.missing_rainfall.push_back(date);
        }
        series.rows.push_back(row);
    }
    return series;
}

std::map<CivilDate, double> load_rainfall_csv(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error(ErrorCode::Io, "cannot open rainfall file: " + path, path);
    }
    std::map<CivilDate, double> rainfall;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        auto comma = line.find(',');
        if (comma == std::string::npos) {
            throw Error(ErrorCode::RainfallParse,
                        path + " line " + std::to_string(line_no) + ": expected date,inches");
        }
        std::string date_text = line.substr(0, comma);
        std::string value_text = line.substr(comma + 1);
        if (line_no == 1 && date_text == "date") continue; // optional header
        CivilDate date;
        try {
            date = parse_civil_date(date_text);
        } catch (const Error&) {
            throw Error(ErrorCode::RainfallParse,
                        path + " line " + std::to_string(line_no) + ": bad date \"" + date_text +
                            "\"");
        }
        double inches = 0.0;
        const char* first = value_text.data();
        const char* last = first + value_text.size();
        auto [ptr, ec] = std::from_chars(first, last, inches);
        if (ec != std::errc{} || ptr != last || inches < 0.0) {
            throw Error(ErrorCode::RainfallParse,
                        path + " line " + std::to_string(line_no) + ": bad rainfall value \"" +
                            value_text + "\"");
        }
        if (!rainfall.emplace(date, inches).second) {
            throw Error(ErrorCode::RainfallParse,
                        path + " line " + std::to_string(line_no) + ": duplicate date \"" +
                            date_text + "\"");
        }
    }
    return rainfall;
}

} // namespace roadpulse
