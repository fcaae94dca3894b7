#include "roadpulse/mapper.hpp"

#include <algorithm>

#include "roadpulse/error.hpp"

namespace roadpulse {

void MappingConfig::validate() const {
    if (adjacency_window < 1) {
        throw Error(ErrorCode::Config, "adjacency_window must be >= 1", "adjacency");
    }
}

bool MappingResult::relates_to(std::string_view highway_id) const {
    return std::any_of(evidence.begin(), evidence.end(),
                       [&](const MatchEvidence& e) { return e.highway_id == highway_id; });
}

Mapper::Mapper(const Lexicon& lexicon, MappingConfig config)
    : lexicon_(&lexicon), config_(config), matcher_(CompiledMatcher::compile(lexicon)) {
    config_.validate();
}

MappingResult Mapper::map(const CleanedTweet& cleaned) const {
    MappingResult result;
    result.record_id = cleaned.record_id;
    if (cleaned.tokens.empty()) return result;

    std::vector<TokenMatch> matches = matcher_.find_all(cleaned.tokens);

    // Highway-term positions, for the indirect adjacency check. Only
    // single-token highway terms exist, so a position fully identifies one.
    std::vector<bool> is_highway_term(cleaned.tokens.size(), false);
    for (const TokenMatch& match : matches) {
        for (const PatternTag& tag : matcher_.patterns()[match.pattern].tags) {
            if (tag.cls == TermClass::HighwayTerm) {
                is_highway_term[match.begin] = true;
            }
        }
    }

    const auto& entries = lexicon_->entries;
    for (std::size_t entry_index = 0; entry_index < entries.size(); ++entry_index) {
        // find_all returns matches ordered by (begin, end), so the first hit
        // per class is the canonical evidence for it.
        const TokenMatch* direct_hit = nullptr;
        std::optional<MatchEvidence> indirect_hit;
        for (const TokenMatch& match : matches) {
            if (direct_hit) break;
            const Pattern& pattern = matcher_.patterns()[match.pattern];
            for (const PatternTag& tag : pattern.tags) {
                if (tag.entry_index != entry_index) continue;
                if (tag.cls == TermClass::Direct) {
                    direct_hit = &match;
                    break;
                }
                if (tag.cls == TermClass::Indirect && !indirect_hit) {
                    // Probe neighbors nearest-first, left before right.
                    for (std::size_t d = 1; d <= config_.adjacency_window && !indirect_hit; ++d) {
                        if (match.begin >= d && is_highway_term[match.begin - d]) {
                            indirect_hit = MatchEvidence{
                                entries[entry_index].id, TermClass::Indirect, pattern.text,
                                match.begin, match.end,
                                cleaned.tokens[match.begin - d], match.begin - d};
                        } else if (std::size_t right = match.end - 1 + d;
                                   right < cleaned.tokens.size() && is_highway_term[right]) {
                            indirect_hit = MatchEvidence{
                                entries[entry_index].id, TermClass::Indirect, pattern.text,
                                match.begin, match.end, cleaned.tokens[right], right};
                        }
                    }
                }
            }
        }
        if (direct_hit) {
            const Pattern& pattern = matcher_.patterns()[direct_hit->pattern];
            result.evidence.push_back(MatchEvidence{entries[entry_index].id, TermClass::Direct,
                                                    pattern.text, direct_hit->begin,
                                                    direct_hit->end, std::nullopt, std::nullopt});
        } else if (indirect_hit) {
            result.evidence.push_back(std::move(*indirect_hit));
        }
    }
    return result;
}

MappingResult map_tweet(const CleanedTweet& cleaned, const Lexicon& lexicon,
                        MappingConfig config) {
    return Mapper(lexicon, config).map(cleaned);
}

CorpusMapping map_corpus(const std::vector<CleanedTweet>& cleaned, const Lexicon& lexicon,
                         MappingConfig config) {
    Mapper mapper(lexicon, config);
    CorpusMapping mapping;
    mapping.results.reserve(cleaned.size());
    mapping.by_highway.resize(lexicon.entries.size());
    for (const CleanedTweet& tweet : cleaned) {
        MappingResult result = mapper.map(tweet);
        for (const MatchEvidence& item : result.evidence) {
            for (std::size_t i = 0; i < lexicon.entries.size(); ++i) {
                if (lexicon.entries[i].id == item.highway_id) {
                    mapping.by_highway[i].push_back(result.record_id);
                    break;
                }
            }
        }
        mapping.results.push_back(std::move(result));
    }
    return mapping;
}

} // namespace roadpulse
