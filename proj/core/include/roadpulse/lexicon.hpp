#pragma once

#include <compare>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "roadpulse/types.hpp"

namespace roadpulse {

/// One search term: a non-empty ordered sequence of lowercase tokens.
/// Single-word terms are one-token phrases.
struct TermPhrase {
    std::vector<std::string> tokens;

    /// Space-joined form, e.g. "beltway 8".
    std::string text() const;

    auto operator<=>(const TermPhrase&) const = default;
};

struct HighwayEntry {
    std::string id;           // unique short key, e.g. "I-45"
    std::string display_name;
    std::vector<TermPhrase> direct_terms;
    std::vector<TermPhrase> indirect_terms;
    std::vector<LatLon> polyline; // optional corridor geometry; empty when absent

    bool operator==(const HighwayEntry&) const = default;

    /// Every token used by this entry's direct and indirect phrases. This is
    /// the exclusion set for the entry's topic tables.
    std::unordered_set<std::string> search_tokens() const;
};

struct Lexicon {
    std::vector<HighwayEntry> entries;               // order is the report order
    std::unordered_set<std::string> highway_terms;   // generic road-type tokens

    bool operator==(const Lexicon& other) const;

    const HighwayEntry* find(std::string_view id) const;

    /// Enforces the structural invariants: unique ids, non-empty term sets,
    /// pairwise-disjoint direct terms across highways, lowercase phrases,
    /// polylines with >= 2 vertices in legal coordinate ranges, non-empty
    /// lowercase highway_terms. Throws Error on violation.
    void validate() const;
};

/// Loads a lexicon document:
///   { "highway_terms": ["fwy", ...],
///     "highways": [ { "id", "name", "direct": [...], "indirect": [...],
///                     "polyline": [[lat, lon], ...] }, ... ] }
/// Phrases are normalized to lowercase and split on whitespace. Throws Error
/// with LexiconParse, DuplicateHighwayId, CrossHighwayDirectTermCollision or
/// EmptyTermSet.
Lexicon load_lexicon(const std::string& path);
Lexicon load_lexicon_from_string(std::string_view text);

/// Inverse of load_lexicon_from_string; load(serialize(lex)) == lex.
std::string serialize_lexicon(const Lexicon& lexicon);

/// The bundled Hurricane Harvey lexicon: I-45, I-10, I-69, I-610 and the Sam
/// Houston Tollway with their direct/indirect search terms, the ten generic
/// highway tokens and sketched corridor polylines.
const Lexicon& builtin_harvey_lexicon();

} // namespace roadpulse
