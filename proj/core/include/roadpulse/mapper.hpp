#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "roadpulse/clean.hpp"
#include "roadpulse/lexicon.hpp"
#include "roadpulse/matcher.hpp"

namespace roadpulse {

struct MappingConfig {
    /// How many positions on each side of an indirect match may hold the
    /// qualifying highway-term neighbor. 1 = immediate neighbors only.
    std::size_t adjacency_window = 1;

    void validate() const; // throws Error(Config) if adjacency_window < 1
};

/// Why a tweet was related to one highway. For indirect matches, `neighbor`
/// is the highway-term token that satisfied the adjacency check and
/// `neighbor_pos` its index; both are empty for direct matches.
struct MatchEvidence {
    std::string highway_id;
    TermClass cls = TermClass::Direct;
    std::string phrase;      // matched phrase, space-joined
    std::size_t begin = 0;   // token span [begin, end)
    std::size_t end = 0;
    std::optional<std::string> neighbor;
    std::optional<std::size_t> neighbor_pos;

    bool operator==(const MatchEvidence&) const = default;
};

struct MappingResult {
    std::string record_id;
    /// One item per related highway, in lexicon entry order.
    std::vector<MatchEvidence> evidence;

    bool operator==(const MappingResult&) const = default;

    bool relates_to(std::string_view highway_id) const;
};

/// Reusable tweet-to-highway mapper. Compile once, map many. The lexicon
/// must outlive the mapper. Immutable after construction.
///
/// A tweet relates to a highway when either
///   (a) one of the highway's direct phrases occurs as a contiguous
///       whole-token subsequence, or
///   (b) an indirect phrase occurs and a highway-term token sits within
///       adjacency_window positions before the phrase or after it (tokens
///       inside the phrase itself never qualify).
/// Evidence is deterministic: the earliest direct match wins; otherwise the
/// earliest indirect occurrence with a qualifying neighbor, probing nearer
/// positions first and the left side before the right.
class Mapper {
public:
    Mapper(const Lexicon& lexicon, MappingConfig config = {});

    MappingResult map(const CleanedTweet& cleaned) const;

    const Lexicon& lexicon() const { return *lexicon_; }
    const MappingConfig& config() const { return config_; }

private:
    const Lexicon* lexicon_;
    MappingConfig config_;
    CompiledMatcher matcher_;
};

/// One-shot convenience over Mapper; prefer Mapper for whole corpora.
MappingResult map_tweet(const CleanedTweet& cleaned, const Lexicon& lexicon,
                        MappingConfig config = {});

struct CorpusMapping {
    std::vector<MappingResult> results; // parallel to the input order
    /// by_highway[i] = record ids related to lexicon.entries[i], input order.
    std::vector<std::vector<std::string>> by_highway;
};

CorpusMapping map_corpus(const std::vector<CleanedTweet>& cleaned, const Lexicon& lexicon,
                         MappingConfig config = {});

} // namespace roadpulse
