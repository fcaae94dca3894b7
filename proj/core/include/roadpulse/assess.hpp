#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <unordered_set>
#include <vector>

#include "roadpulse/clean.hpp"
#include "roadpulse/lexicon.hpp"
#include "roadpulse/mapper.hpp"
#include "roadpulse/time.hpp"
#include "roadpulse/types.hpp"

namespace roadpulse {

struct Phase {
    std::string name;
    CivilDate start; // inclusive local dates
    CivilDate end;

    bool operator==(const Phase&) const = default;

    int length_days() const;
    bool contains(CivilDate date) const;
};

/// The disaster timeline. The baseline phase normalizes intensity and must be
/// the first phase.
struct PhaseConfig {
    std::vector<Phase> phases;
    std::string baseline;

    bool operator==(const PhaseConfig&) const = default;

    /// Hurricane Harvey: pre-peak Aug 23-25, peak Aug 26-30,
    /// post-peak Aug 31 - Sep 5, 2017; baseline = pre-peak.
    static PhaseConfig harvey_default();

    /// Throws Error(Config) unless phases are non-empty, internally ordered
    /// (start <= end), strictly ordered and non-overlapping between
    /// neighbors, uniquely named, and baseline names the first phase.
    void validate() const;

    const Phase* find(std::string_view name) const;
};

std::optional<std::string> assign_phase(CivilDate local_date, const PhaseConfig& phases);
std::optional<std::string> assign_phase(const TweetRecord& record, const PhaseConfig& phases,
                                        UtcOffset offset);

/// Mapped records bucketed into (highway, phase) cells. Indices refer to the
/// record vector the partition was built from.
struct PhaseCells {
    /// records_by_cell[h][p] = indices of records related to
    /// lexicon.entries[h] whose local date falls in phases.phases[p].
    std::vector<std::vector<std::vector<std::size_t>>> records_by_cell;
    /// Mapped records whose local date matched no phase, per highway.
    std::vector<std::int64_t> unphased_by_highway;
};

/// `records` and `mapping.results` must be parallel (same order, same size).
PhaseCells partition_cells(const std::vector<TweetRecord>& records, const CorpusMapping& mapping,
                           const Lexicon& lexicon, const PhaseConfig& phases, UtcOffset offset);

struct IntensityRow {
    std::string highway_id;
    std::string phase;
    std::int64_t tweet_count = 0;
    double avg_daily = 0.0;
    /// Phase average divided by the baseline average; empty when the
    /// baseline saw no tweets (reported as NA rather than a made-up number).
    std::optional<double> intensity;

    bool operator==(const IntensityRow&) const = default;
};

/// One row per (highway, phase), lexicon order x phase order. The division
/// is computed from integer cross-products, so intensities are bit-identical
/// under any integer scaling of a highway's counts and the baseline row is
/// exactly 1.0 whenever defined.
std::vector<IntensityRow> intensity_table(const PhaseCells& cells, const Lexicon& lexicon,
                                          const PhaseConfig& phases);

struct TermCount {
    std::string term;
    std::int64_t doc_freq = 0; // tweets containing the term, not occurrences

    bool operator==(const TermCount&) const = default;
};

/// Top-k terms of a tweet cell by document frequency, ties broken
/// alphabetically; `excluded` tokens never appear. Fewer than k rows when the
/// vocabulary runs out.
std::vector<TermCount> top_terms(const std::vector<const CleanedTweet*>& tweets, std::size_t k,
                                 const std::unordered_set<std::string>& excluded);

struct TopicRow {
    std::string highway_id;
    std::string phase;
    std::size_t rank = 0; // 1-based within the cell
    std::string term;
    std::int64_t doc_freq = 0;

    bool operator==(const TopicRow&) const = default;
};

/// top_terms over every (highway, phase) cell; each highway's own search
/// tokens are excluded from its rows. `cleaned` must be parallel to the
/// records the cells were built from.
std::vector<TopicRow> topic_table(const PhaseCells& cells, const std::vector<CleanedTweet>& cleaned,
                                  const Lexicon& lexicon, const PhaseConfig& phases, std::size_t k);

struct GeoPoint {
    double lat = 0.0;
    double lon = 0.0;
    std::string record_id;

    bool operator==(const GeoPoint&) const = default;
};

struct GeoFeatureSet {
    std::string highway_id;
    std::string phase;
    std::vector<GeoPoint> points; // record order

    bool operator==(const GeoFeatureSet&) const = default;
};

/// One feature set per (highway, phase), empty cells included.
std::vector<GeoFeatureSet> geo_features(const PhaseCells& cells,
                                        const std::vector<TweetRecord>& records,
                                        const Lexicon& lexicon, const PhaseConfig& phases);

struct OverlayRow {
    CivilDate date;
    std::int64_t tweets = 0;
    double rainfall_in = 0.0;

    bool operator==(const OverlayRow&) const = default;
};

struct OverlaySeries {
    std::vector<OverlayRow> rows;              // one per window date, in order
    std::vector<CivilDate> missing_rainfall;   // dates filled with 0.0
};

/// Pairs the corpus-wide daily counts with measured rainfall. Dates absent
/// from `rainfall` get 0.0 inches and are recorded in missing_rainfall so
/// callers can warn.
OverlaySeries overlay_series(const DailySeries& daily,
                             const std::map<CivilDate, double>& rainfall);

/// Reads a `date,inches` CSV (ISO dates, optional header). Throws
/// Error(RainfallParse) on malformed rows, Error(Io) when unreadable.
std::map<CivilDate, double> load_rainfall_csv(const std::string& path);

} // namespace roadpulse
