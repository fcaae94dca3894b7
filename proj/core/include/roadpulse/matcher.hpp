#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "roadpulse/lexicon.hpp"

namespace roadpulse {

enum class TermClass {
    Direct,
    Indirect,
    HighwayTerm,
};

std::string_view to_string(TermClass cls);

/// Where a pattern came from. Highway-term patterns carry kNoEntry.
struct PatternTag {
    static constexpr std::size_t kNoEntry = static_cast<std::size_t>(-1);

    std::size_t entry_index = kNoEntry; // index into Lexicon::entries
    TermClass cls = TermClass::HighwayTerm;

    bool operator==(const PatternTag&) const = default;
};

/// One distinct token sequence searched for. The same sequence may serve
/// several roles (e.g. an indirect term of two highways), hence tags is a list.
struct Pattern {
    std::vector<std::string> tokens;
    std::string text; // space-joined tokens
    std::vector<PatternTag> tags;
};

/// A pattern occurrence over a token sequence: half-open span [begin, end).
struct TokenMatch {
    std::size_t begin = 0;
    std::size_t end = 0;
    std::size_t pattern = 0; // index into CompiledMatcher::patterns()

    auto operator<=>(const TokenMatch&) const = default;
};

/// Multi-pattern matcher over whole tokens (Aho-Corasick on interned token
/// ids). Reports every occurrence of every pattern, overlaps included; "610"
/// never matches the pattern "10" because comparison is per-token, not
/// per-character. Immutable after compile(); safe to share across threads.
class CompiledMatcher {
public:
    static CompiledMatcher compile(const Lexicon& lexicon);

    const std::vector<Pattern>& patterns() const { return patterns_; }

    /// Appends all matches to `out` (cleared first), sorted by
    /// (begin, end, pattern index).
    void find_all(std::span<const std::string> tokens, std::vector<TokenMatch>& out) const;

    std::vector<TokenMatch> find_all(std::span<const std::string> tokens) const;

private:
    struct Node {
        std::unordered_map<int, int> next; // token id -> node
        int fail = 0;
        std::vector<std::size_t> output;   // pattern indices ending here
    };

    void add_pattern(const TermPhrase& phrase, PatternTag tag);
    void build_links();

    std::vector<Pattern> patterns_;
    std::unordered_map<std::string, int> vocab_; // token -> id
    std::vector<Node> nodes_;                    // nodes_[0] is the root
};

} // namespace roadpulse
