#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>
#include <random>
#include <set>

#include "roadpulse/assess.hpp"
#include "roadpulse/error.hpp"
#include "roadpulse/geo.hpp"
#include "roadpulse/ingest.hpp"
#include "roadpulse/lexicon.hpp"
#include "roadpulse/mapper.hpp"
#include "support/test_util.hpp"

using namespace roadpulse;
using roadpulse::testing::local_noon;
using roadpulse::testing::make_record;

namespace {

const UtcOffset kHouston{-5 * 60};

TweetRecord record_on(CivilDate date, std::string text, std::string id) {
    TweetRecord record;
    record.id = std::move(id);
    record.timestamp_utc = local_noon(date, kHouston);
    record.lat = 29.76;
    record.lon = -95.36;
    record.text = std::move(text);
    return record;
}

/// Tokenless clean step for corpora whose texts are already token lists.
std::vector<CleanedTweet> presplit(const std::vector<TweetRecord>& records) {
    std::vector<CleanedTweet> cleaned;
    cleaned.reserve(records.size());
    for (const TweetRecord& record : records) {
        CleanedTweet tweet;
        tweet.record_id = record.id;
        std::size_t pos = 0;
        while (pos < record.text.size()) {
            std::size_t space = record.text.find(' ', pos);
            if (space == std::string::npos) space = record.text.size();
            if (space > pos) tweet.tokens.push_back(record.text.substr(pos, space - pos));
            pos = space + 1;
        }
        cleaned.push_back(std::move(tweet));
    }
    return cleaned;
}

const IntensityRow& row_of(const std::vector<IntensityRow>& rows, std::string_view highway,
                           std::string_view phase) {
    for (const IntensityRow& row : rows) {
        if (row.highway_id == highway && row.phase == phase) return row;
    }
    REQUIRE(false);
    return rows.front();
}

std::uint64_t bits(double value) { return std::bit_cast<std::uint64_t>(value); }

ErrorCode code_of_validate(PhaseConfig config) {
    try {
        config.validate();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("expected an Error");
    return ErrorCode::Io;
}

} // namespace

TEST_CASE("the default timeline covers the fourteen study days") {
    PhaseConfig config = PhaseConfig::harvey_default();
    CHECK_NOTHROW(config.validate());
    REQUIRE(config.phases.size() == 3);
    CHECK(config.phases[0].name == "pre-peak");
    CHECK(config.phases[0].start == CivilDate{2017, 8, 23});
    CHECK(config.phases[0].end == CivilDate{2017, 8, 25});
    CHECK(config.phases[0].length_days() == 3);
    CHECK(config.phases[1].name == "peak");
    CHECK(config.phases[1].start == CivilDate{2017, 8, 26});
    CHECK(config.phases[1].end == CivilDate{2017, 8, 30});
    CHECK(config.phases[1].length_days() == 5);
    CHECK(config.phases[2].name == "post-peak");
    CHECK(config.phases[2].start == CivilDate{2017, 8, 31});
    CHECK(config.phases[2].end == CivilDate{2017, 9, 5});
    CHECK(config.phases[2].length_days() == 6);
    CHECK(config.baseline == "pre-peak");
    CHECK(config.find("peak") == &config.phases[1]);
    CHECK(config.find("rush-hour") == nullptr);
}

TEST_CASE("phase configs reject structural problems") {
    PhaseConfig good = PhaseConfig::harvey_default();

    PhaseConfig empty;
    empty.baseline = "x";
    CHECK(code_of_validate(empty) == ErrorCode::Config);

    PhaseConfig overlapping = good;
    overlapping.phases[1].start = CivilDate{2017, 8, 25}; // collides with pre-peak end
    CHECK(code_of_validate(overlapping) == ErrorCode::Config);

    PhaseConfig unordered = good;
    std::swap(unordered.phases[0], unordered.phases[1]);
    unordered.baseline = unordered.phases[0].name;
    CHECK(code_of_validate(unordered) == ErrorCode::Config);

    PhaseConfig backwards = good;
    backwards.phases[0].end = CivilDate{2017, 8, 22};
    CHECK(code_of_validate(backwards) == ErrorCode::Config);

    PhaseConfig duplicate = good;
    duplicate.phases[2].name = "peak";
    CHECK(code_of_validate(duplicate) == ErrorCode::Config);

    PhaseConfig wrong_baseline = good;
    wrong_baseline.baseline = "peak";
    CHECK(code_of_validate(wrong_baseline) == ErrorCode::Config);

    PhaseConfig impossible = good;
    impossible.phases[0].start = CivilDate{2017, 2, 30};
    CHECK(code_of_validate(impossible) == ErrorCode::Config);
}

TEST_CASE("dates land in their phase or in none") {
    PhaseConfig config = PhaseConfig::harvey_default();
    CHECK(assign_phase(CivilDate{2017, 8, 24}, config) == "pre-peak");
    CHECK(assign_phase(CivilDate{2017, 8, 26}, config) == "peak");
    CHECK(assign_phase(CivilDate{2017, 9, 6}, config) == std::nullopt);
    // Boundaries are inclusive on both ends.
    CHECK(assign_phase(CivilDate{2017, 8, 23}, config) == "pre-peak");
    CHECK(assign_phase(CivilDate{2017, 8, 25}, config) == "pre-peak");
    CHECK(assign_phase(CivilDate{2017, 8, 30}, config) == "peak");
    CHECK(assign_phase(CivilDate{2017, 8, 31}, config) == "post-peak");
    CHECK(assign_phase(CivilDate{2017, 9, 5}, config) == "post-peak");
    CHECK(assign_phase(CivilDate{2017, 8, 22}, config) == std::nullopt);
}

TEST_CASE("records are phased by their local calendar date") {
    PhaseConfig config = PhaseConfig::harvey_default();
    // 04:59 UTC on Aug 26 is still 23:59 on Aug 25 in Houston.
    TweetRecord late = make_record("a", "2017-08-26T04:59:00Z", 29.7, -95.4, "x");
    CHECK(assign_phase(late, config, kHouston) == "pre-peak");
    TweetRecord early = make_record("b", "2017-08-26T05:00:00Z", 29.7, -95.4, "x");
    CHECK(assign_phase(early, config, kHouston) == "peak");
}

namespace {

/// Per-day planted corpus: `daily[d]` tweets of `text` on consecutive dates
/// starting at `first`.
void plant(std::vector<TweetRecord>& records, CivilDate first, const std::vector<int>& daily,
           const std::string& text) {
    std::int64_t day0 = days_from_civil(first);
    for (std::size_t d = 0; d < daily.size(); ++d) {
        for (int i = 0; i < daily[d]; ++i) {
            CivilDate date = civil_from_days(day0 + static_cast<std::int64_t>(d));
            records.push_back(record_on(date, text,
                                        "r" + std::to_string(records.size())));
        }
    }
}

} // namespace

TEST_CASE("intensity normalizes daily averages against the baseline phase") {
    const Lexicon& lexicon = builtin_harvey_lexicon();
    PhaseConfig config = PhaseConfig::harvey_default();

    std::vector<TweetRecord> records;
    plant(records, CivilDate{2017, 8, 23}, {2, 4, 6}, "i10");          // baseline avg 4
    plant(records, CivilDate{2017, 8, 26}, {10, 10, 10, 10, 0}, "i10"); // peak avg 8

    CorpusMapping mapping = map_corpus(presplit(records), lexicon);
    PhaseCells cells = partition_cells(records, mapping, lexicon, config, kHouston);
    std::vector<IntensityRow> rows = intensity_table(cells, lexicon, config);

    REQUIRE(rows.size() == lexicon.entries.size() * config.phases.size());

    const IntensityRow& base = row_of(rows, "I-10", "pre-peak");
    CHECK(base.tweet_count == 12);
    CHECK(base.avg_daily == 4.0);
    REQUIRE(base.intensity.has_value());
    CHECK(*base.intensity == 1.0); // exactly, not approximately

    const IntensityRow& peak = row_of(rows, "I-10", "peak");
    CHECK(peak.tweet_count == 40);
    CHECK(peak.avg_daily == 8.0);
    REQUIRE(peak.intensity.has_value());
    CHECK(*peak.intensity == 2.0);

    const IntensityRow& post = row_of(rows, "I-10", "post-peak");
    CHECK(post.tweet_count == 0);
    REQUIRE(post.intensity.has_value());
    CHECK(*post.intensity == 0.0);

    // Highways with no baseline activity report no intensity at all.
    const IntensityRow& idle = row_of(rows, "I-45", "peak");
    CHECK(idle.tweet_count == 0);
    CHECK_FALSE(idle.intensity.has_value());
}

TEST_CASE("a zero baseline leaves intensity undefined even for busy phases") {
    const Lexicon& lexicon = builtin_harvey_lexicon();
    PhaseConfig config = PhaseConfig::harvey_default();

    std::vector<TweetRecord> records;
    plant(records, CivilDate{2017, 8, 26}, {5, 3, 0, 0, 1}, "i45 close");

    CorpusMapping mapping = map_corpus(presplit(records), lexicon);
    PhaseCells cells = partition_cells(records, mapping, lexicon, config, kHouston);
    std::vector<IntensityRow> rows = intensity_table(cells, lexicon, config);

    const IntensityRow& peak = row_of(rows, "I-45", "peak");
    CHECK(peak.tweet_count == 9);
    CHECK_FALSE(peak.intensity.has_value());
    CHECK_FALSE(row_of(rows, "I-45", "pre-peak").intensity.has_value());
}

TEST_CASE("scaling every count by a constant leaves intensities bit-identical") {
    const Lexicon& lexicon = builtin_harvey_lexicon();
    PhaseConfig config = PhaseConfig::harvey_default();

    std::vector<TweetRecord> base_records;
    plant(base_records, CivilDate{2017, 8, 23}, {3, 1, 2}, "i610 flood");
    plant(base_records, CivilDate{2017, 8, 26}, {7, 0, 2, 5, 1}, "i610 flood");
    plant(base_records, CivilDate{2017, 8, 31}, {1, 0, 0, 2, 0, 4}, "i610 flood");

    auto intensities = [&](const std::vector<TweetRecord>& records) {
        CorpusMapping mapping = map_corpus(presplit(records), lexicon);
        PhaseCells cells = partition_cells(records, mapping, lexicon, config, kHouston);
        std::vector<std::uint64_t> result;
        for (const IntensityRow& row : intensity_table(cells, lexicon, config)) {
            if (row.highway_id != "I-610") continue;
            REQUIRE(row.intensity.has_value());
            result.push_back(bits(*row.intensity));
        }
        return result;
    };

    std::vector<std::uint64_t> reference = intensities(base_records);
    for (int scale : {2, 10}) {
        std::vector<TweetRecord> scaled;
        for (const TweetRecord& record : base_records) {
            for (int c = 0; c < scale; ++c) {
                TweetRecord copy = record;
                copy.id += "_" + std::to_string(c);
                scaled.push_back(std::move(copy));
            }
        }
        CAPTURE(scale);
        CHECK(intensities(scaled) == reference);
    }
}

TEST_CASE("phase counts conserve the mapped total under the default timeline") {
    const Lexicon& lexicon = builtin_harvey_lexicon();
    PhaseConfig config = PhaseConfig::harvey_default();

    std::mt19937 rng(2017);
    std::uniform_int_distribution<std::int64_t> day(days_from_civil(CivilDate{2017, 8, 23}),
                                                    days_from_civil(CivilDate{2017, 9, 5}));
    std::uniform_int_distribution<int> hour(0, 23);
    std::vector<std::string> texts = {"i45 close", "45 fwy jam", "i10 flood", "610 loop",
                                      "beltway 8 slow", "nothing here", "sam houston fwy",
                                      "i10 i45 stack", "69 eastex hwy", "45 songs"};
    std::uniform_int_distribution<std::size_t> pick(0, texts.size() - 1);

    std::vector<TweetRecord> records;
    for (int i = 0; i < 400; ++i) {
        CivilDate date = civil_from_days(day(rng));
        TweetRecord record = record_on(date, texts[pick(rng)], "r" + std::to_string(i));
        // Any hour of the local day stays within the same local date.
        record.timestamp_utc += (hour(rng) - 12) * 3600;
        records.push_back(std::move(record));
    }

    CorpusMapping mapping = map_corpus(presplit(records), lexicon);
    PhaseCells cells = partition_cells(records, mapping, lexicon, config, kHouston);

    for (std::size_t h = 0; h < lexicon.entries.size(); ++h) {
        std::int64_t phased = 0;
        for (const auto& cell : cells.records_by_cell[h]) {
            phased += static_cast<std::int64_t>(cell.size());
        }
        CAPTURE(lexicon.entries[h].id);
        CHECK(cells.unphased_by_highway[h] == 0); // phases tile the window
        CHECK(phased == static_cast<std::int64_t>(mapping.by_highway[h].size()));
    }
}

TEST_CASE("partition_cells rejects mismatched inputs and counts the unphased") {
    const Lexicon& lexicon = builtin_harvey_lexicon();
    PhaseConfig config = PhaseConfig::harvey_default();

    std::vector<TweetRecord> records = {record_on(CivilDate{2017, 9, 6}, "i45", "late")};
    CorpusMapping mapping = map_corpus(presplit(records), lexicon);

    CHECK_THROWS_AS(partition_cells({}, mapping, lexicon, config, kHouston), Error);

    PhaseCells cells = partition_cells(records, mapping, lexicon, config, kHouston);
    CHECK(cells.unphased_by_highway[0] == 1); // I-45, after the last phase
    for (const auto& cell : cells.records_by_cell[0]) CHECK(cell.empty());
}

TEST_CASE("top_terms counts tweets, not occurrences, and breaks ties by name") {
    CleanedTweet a{"a", {"close", "flood"}};
    CleanedTweet b{"b", {"close", "lane"}};
    CleanedTweet c{"c", {"close"}};
    std::vector<const CleanedTweet*> cell = {&a, &b, &c};

    std::vector<TermCount> top = top_terms(cell, 2, {});
    REQUIRE(top.size() == 2);
    CHECK(top[0] == TermCount{"close", 3});
    CHECK(top[1] == TermCount{"flood", 1}); // beats "lane" alphabetically

    std::vector<TermCount> filtered = top_terms(cell, 2, {"close"});
    REQUIRE(filtered.size() == 2);
    CHECK(filtered[0] == TermCount{"flood", 1});
    CHECK(filtered[1] == TermCount{"lane", 1});

    // k beyond the vocabulary: every term, still ordered.
    std::vector<TermCount> all = top_terms(cell, 10, {});
    REQUIRE(all.size() == 3);
    CHECK(all[2] == TermCount{"lane", 1});

    // Repeats inside one tweet count once.
    CleanedTweet dup{"d", {"close", "close", "close"}};
    std::vector<const CleanedTweet*> one = {&dup};
    CHECK(top_terms(one, 1, {}) == std::vector<TermCount>{TermCount{"close", 1}});

    CHECK(top_terms({}, 5, {}).empty());
}

TEST_CASE("top_terms matches a brute-force recount on a planted corpus") {
    std::mt19937 rng(200);
    std::vector<std::string> vocabulary = roadpulse::testing::filler_vocabulary(30);
    vocabulary.insert(vocabulary.end(), {"flood", "close", "lane", "rain", "jam"});
    std::uniform_int_distribution<std::size_t> pick(0, vocabulary.size() - 1);
    std::uniform_int_distribution<int> len(0, 12);

    std::vector<CleanedTweet> corpus;
    for (int i = 0; i < 200; ++i) {
        CleanedTweet tweet;
        tweet.record_id = std::to_string(i);
        int n = len(rng);
        for (int t = 0; t < n; ++t) tweet.tokens.push_back(vocabulary[pick(rng)]);
        corpus.push_back(std::move(tweet));
    }
    std::vector<const CleanedTweet*> cell;
    for (const CleanedTweet& tweet : corpus) cell.push_back(&tweet);

    const std::unordered_set<std::string> excluded = {"filler0", "rain"};

    // Independent recount: set-of-tweets per term, then the same ordering.
    std::map<std::string, std::set<std::string>> tweets_with_term;
    for (const CleanedTweet& tweet : corpus) {
        for (const std::string& token : tweet.tokens) {
            if (!excluded.count(token)) tweets_with_term[token].insert(tweet.record_id);
        }
    }
    std::vector<TermCount> expected;
    for (const auto& [term, ids] : tweets_with_term) {
        expected.push_back(TermCount{term, static_cast<std::int64_t>(ids.size())});
    }
    std::sort(expected.begin(), expected.end(), [](const TermCount& x, const TermCount& y) {
        return x.doc_freq != y.doc_freq ? x.doc_freq > y.doc_freq : x.term < y.term;
    });

    for (std::size_t k : {std::size_t{1}, std::size_t{5}, std::size_t{20}}) {
        std::vector<TermCount> truncated = expected;
        if (truncated.size() > k) truncated.resize(k);
        CAPTURE(k);
        CHECK(top_terms(cell, k, excluded) == truncated);
    }
}

TEST_CASE("topic rows never surface a highway's own search tokens") {
    const Lexicon& lexicon = builtin_harvey_lexicon();
    PhaseConfig config = PhaseConfig::harvey_default();

    std::vector<TweetRecord> records;
    plant(records, CivilDate{2017, 8, 26}, {4}, "i10 katy flood");
    plant(records, CivilDate{2017, 8, 26}, {3}, "i10 katy close");
    plant(records, CivilDate{2017, 8, 27}, {2}, "45 fwy flood");

    std::vector<CleanedTweet> cleaned = presplit(records);
    CorpusMapping mapping = map_corpus(cleaned, lexicon);
    PhaseCells cells = partition_cells(records, mapping, lexicon, config, kHouston);
    std::vector<TopicRow> rows = topic_table(cells, cleaned, lexicon, config, 5);

    std::int64_t i10_peak_count = 0;
    for (const IntensityRow& row : intensity_table(cells, lexicon, config)) {
        if (row.highway_id == "I-10" && row.phase == "peak") i10_peak_count = row.tweet_count;
    }
    REQUIRE(i10_peak_count == 7);

    bool saw_i10_flood = false;
    bool saw_i45_fwy = false;
    for (const TopicRow& row : rows) {
        const HighwayEntry* entry = lexicon.find(row.highway_id);
        REQUIRE(entry != nullptr);
        CAPTURE(row.highway_id);
        CAPTURE(row.term);
        // Own search tokens are filtered; "katy" is part of "10 katy".
        CHECK(entry->search_tokens().count(row.term) == 0);
        if (row.highway_id == "I-10") CHECK(row.term != "katy");
        // Document frequency can never exceed the cell's tweet count.
        if (row.highway_id == "I-10" && row.phase == "peak") {
            CHECK(row.doc_freq <= i10_peak_count);
        }
        if (row.highway_id == "I-10" && row.phase == "peak" && row.term == "flood") {
            saw_i10_flood = true;
            CHECK(row.doc_freq == 4);
            CHECK(row.rank == 1); // 4 beats 3, and ranks start at 1
        }
        // Generic road words stay eligible as topics.
        if (row.highway_id == "I-45" && row.term == "fwy") saw_i45_fwy = true;
    }
    CHECK(saw_i10_flood);
    CHECK(saw_i45_fwy);

    // Ranks are consecutive from 1 within each cell.
    std::map<std::pair<std::string, std::string>, std::size_t> last_rank;
    for (const TopicRow& row : rows) {
        auto key = std::make_pair(row.highway_id, row.phase);
        CHECK(row.rank == last_rank[key] + 1);
        last_rank[key] = row.rank;
    }
}

TEST_CASE("geo feature sets carry exact coordinates for every cell") {
    const Lexicon& lexicon = builtin_harvey_lexicon();
    PhaseConfig config = PhaseConfig::harvey_default();

    std::vector<TweetRecord> records;
    TweetRecord hit = record_on(CivilDate{2017, 8, 27}, "i10 flooded", "p1");
    hit.lat = 29.78;
    hit.lon = -95.60;
    records.push_back(hit);
    TweetRecord both = record_on(CivilDate{2017, 8, 24}, "i10 i45", "p2");
    records.push_back(both);

    CorpusMapping mapping = map_corpus(presplit(records), lexicon);
    PhaseCells cells = partition_cells(records, mapping, lexicon, config, kHouston);
    std::vector<GeoFeatureSet> sets = geo_features(cells, records, lexicon, config);

    // One set per (highway, phase), even when empty.
    REQUIRE(sets.size() == lexicon.entries.size() * config.phases.size());

    auto set_of = [&](std::string_view highway, std::string_view phase) -> const GeoFeatureSet& {
        for (const GeoFeatureSet& set : sets) {
            if (set.highway_id == highway && set.phase == phase) return set;
        }
        REQUIRE(false);
        return sets.front();
    };

    const GeoFeatureSet& i10_peak = set_of("I-10", "peak");
    REQUIRE(i10_peak.points.size() == 1);
    CHECK(i10_peak.points[0] == GeoPoint{29.78, -95.60, "p1"});

    CHECK(set_of("I-69", "post-peak").points.empty());

    // The two-highway tweet appears in both pre-peak sets.
    REQUIRE(set_of("I-10", "pre-peak").points.size() == 1);
    REQUIRE(set_of("I-45", "pre-peak").points.size() == 1);
    CHECK(set_of("I-10", "pre-peak").points[0].record_id == "p2");
    CHECK(set_of("I-45", "pre-peak").points[0].record_id == "p2");
}

TEST_CASE("haversine distance is sane at city scale") {
    // One degree of longitude on the equator.
    CHECK(haversine_m(LatLon{0.0, 0.0}, LatLon{0.0, 1.0}) ==
          doctest::Approx(111194.9).epsilon(0.001));
    // Zero distance for identical points.
    CHECK(haversine_m(LatLon{29.76, -95.36}, LatLon{29.76, -95.36}) == 0.0);
    // Symmetry.
    LatLon a{29.76, -95.36};
    LatLon b{29.90, -95.10};
    CHECK(haversine_m(a, b) == haversine_m(b, a));
}

TEST_CASE("point-to-polyline distance handles vertices, offsets and clamps") {
    std::vector<LatLon> east_west = {LatLon{29.75, -95.6}, LatLon{29.75, -95.3}};

    // A vertex is on the line.
    CHECK(point_to_polyline_distance_m(LatLon{29.75, -95.6}, east_west) < 1e-6);

    // 0.01 degrees of latitude north of the segment interior.
    double north = point_to_polyline_distance_m(LatLon{29.76, -95.45}, east_west);
    CHECK(north > 1108.0);
    CHECK(north < 1118.0);

    // Beyond an endpoint the projection clamps: distance to the endpoint.
    LatLon past_end{29.75, -95.2};
    CHECK(point_to_polyline_distance_m(past_end, east_west) ==
          doctest::Approx(haversine_m(past_end, LatLon{29.75, -95.3})).epsilon(1e-6));

    // Fewer than two vertices cannot form a line.
    std::vector<LatLon> lone = {LatLon{29.75, -95.6}};
    CHECK_THROWS_AS(point_to_polyline_distance_m(LatLon{29.75, -95.6}, lone), Error);
    try {
        point_to_polyline_distance_m(LatLon{29.75, -95.6}, lone);
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::DegeneratePolyline);
    }

    // The closest segment wins on a multi-segment line.
    std::vector<LatLon> bent = {LatLon{29.70, -95.6}, LatLon{29.70, -95.4}, LatLon{29.90, -95.4}};
    double near_second = point_to_polyline_distance_m(LatLon{29.85, -95.39}, bent);
    CHECK(near_second < 1200.0); // close to the northbound leg, far from the first
}

TEST_CASE("points sampled on a bundled corridor sit on its polyline") {
    const HighwayEntry* i10 = builtin_harvey_lexicon().find("I-10");
    REQUIRE(i10 != nullptr);
    REQUIRE(i10->polyline.size() >= 2);
    for (std::size_t s = 0; s + 1 < i10->polyline.size(); ++s) {
        const LatLon& a = i10->polyline[s];
        const LatLon& b = i10->polyline[s + 1];
        for (double t : {0.0, 0.25, 0.5, 0.75, 1.0}) {
            LatLon sample{a.lat + (b.lat - a.lat) * t, a.lon + (b.lon - a.lon) * t};
            double d = point_to_polyline_distance_m(sample, i10->polyline);
            CAPTURE(s);
            CAPTURE(t);
            CHECK(d < 30.0);
        }
    }
}

TEST_CASE("overlay pairs daily counts with rainfall and flags gaps") {
    SUBCASE("matched dates") {
        DailySeries daily;
        daily.counts[CivilDate{2017, 8, 23}] = 5;
        std::map<CivilDate, double> rainfall = {{CivilDate{2017, 8, 23}, 0.0}};
        OverlaySeries series = overlay_series(daily, rainfall);
        REQUIRE(series.rows.size() == 1);
        CHECK(series.rows[0] == OverlayRow{CivilDate{2017, 8, 23}, 5, 0.0});
        CHECK(series.missing_rainfall.empty());
    }

    SUBCASE("missing rainfall becomes zero and is reported") {
        DailySeries daily;
        daily.counts[CivilDate{2017, 8, 23}] = 5;
        daily.counts[CivilDate{2017, 8, 24}] = 2;
        std::map<CivilDate, double> rainfall = {{CivilDate{2017, 8, 23}, 1.25}};
        OverlaySeries series = overlay_series(daily, rainfall);
        REQUIRE(series.rows.size() == 2);
        CHECK(series.rows[0].rainfall_in == 1.25);
        CHECK(series.rows[1] == OverlayRow{CivilDate{2017, 8, 24}, 2, 0.0});
        CHECK(series.missing_rainfall == std::vector<CivilDate>{CivilDate{2017, 8, 24}});
    }

    SUBCASE("a fourteen-day window yields fourteen rows") {
        TimeWindow window{CivilDate{2017, 8, 23}, CivilDate{2017, 9, 5}};
        DailySeries daily = daily_counts({}, window, kHouston);
        OverlaySeries series = overlay_series(daily, {});
        CHECK(series.rows.size() == 14);
        CHECK(series.missing_rainfall.size() == 14);
    }
}

TEST_CASE("rainfall files parse strictly") {
    roadpulse::testing::TempDir dir;
    auto load = [&](const char* name, std::string_view content) {
        roadpulse::testing::write_file(dir.file(name), content);
        return load_rainfall_csv(dir.file(name).string());
    };
    auto code_of = [&](const char* name, std::string_view content) {
        try {
            load(name, content);
        } catch (const Error& e) {
            return e.code();
        }
        FAIL("expected an Error");
        return ErrorCode::Io;
    };

    std::map<CivilDate, double> with_header =
        load("a.csv", "date,inches\n2017-08-23,0.5\n2017-08-24,16.08\n");
    REQUIRE(with_header.size() == 2);
    CHECK(with_header[CivilDate{2017, 8, 23}] == 0.5);
    CHECK(with_header[CivilDate{2017, 8, 24}] == 16.08);

    std::map<CivilDate, double> bare = load("b.csv", "2017-08-23,0\n");
    CHECK(bare[CivilDate{2017, 8, 23}] == 0.0);

    // CRLF and blank lines are tolerated.
    std::map<CivilDate, double> crlf = load("c.csv", "date,inches\r\n2017-08-23,2.5\r\n\r\n");
    CHECK(crlf[CivilDate{2017, 8, 23}] == 2.5);

    CHECK(code_of("d.csv", "2017-08-23\n") == ErrorCode::RainfallParse);
    CHECK(code_of("e.csv", "not-a-date,1.0\n") == ErrorCode::RainfallParse);
    CHECK(code_of("f.csv", "2017-08-23,wet\n") == ErrorCode::RainfallParse);
    CHECK(code_of("g.csv", "2017-08-23,-1.0\n") == ErrorCode::RainfallParse);
    CHECK(code_of("h.csv", "2017-08-23,1.0\n2017-08-23,2.0\n") == ErrorCode::RainfallParse);
    CHECK(code_of("i.csv", "2017-08-23,1.0trailing\n") == ErrorCode::RainfallParse);

    CHECK_THROWS_AS(load_rainfall_csv((dir.path() / "absent.csv").string()), Error);
}
