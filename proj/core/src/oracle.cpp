#include "roadpulse/oracle.hpp"

#include <algorithm>

namespace roadpulse {

namespace {

struct Occurrence {
    std::size_t begin;
    std::size_t end;
    const TermPhrase* phrase;
};

bool phrase_at(const std::vector<std::string>& tokens, const TermPhrase& phrase, std::size_t pos) {
    if (pos + phrase.tokens.size() > tokens.size()) return false;
    for (std::size_t i = 0; i < phrase.tokens.size(); ++i) {
        if (tokens[pos + i] != phrase.tokens[i]) return false;
    }
    return true;
}

std::vector<Occurrence> scan_all(const std::vector<std::string>& tokens,
                                 const std::vector<TermPhrase>& phrases) {
    std::vector<Occurrence> found;
    for (const TermPhrase& phrase : phrases) {
        for (std::size_t pos = 0; pos + phrase.tokens.size() <= tokens.size(); ++pos) {
            if (phrase_at(tokens, phrase, pos)) {
                found.push_back(Occurrence{pos, pos + phrase.tokens.size(), &phrase});
            }
        }
    }
    std::sort(found.begin(), found.end(), [](const Occurrence& a, const Occurrence& b) {
        return a.begin != b.begin ? a.begin < b.begin : a.end < b.end;
    });
    return found;
}

} // namespace

MappingResult oracle_map(const CleanedTweet& cleaned, const Lexicon& lexicon,
                         MappingConfig config) {
    config.validate();
    MappingResult result;
    result.record_id = cleaned.record_id;
    const std::vector<std::string>& tokens = cleaned.tokens;
    if (tokens.empty()) return result;

    auto is_highway_term = [&](std::size_t pos) {
        return lexicon.highway_terms.count(tokens[pos]) > 0;
    };

    for (const HighwayEntry& entry : lexicon.entries) {
        std::vector<Occurrence> direct = scan_all(tokens, entry.direct_terms);
        if (!direct.empty()) {
            const Occurrence& hit = direct.front();
            result.evidence.push_back(MatchEvidence{entry.id, TermClass::Direct,
                                                    hit.phrase->text(), hit.begin, hit.end,
                                                    std::nullopt, std::nullopt});
            continue;
        }
        for (const Occurrence& hit : scan_all(tokens, entry.indirect_terms)) {
            std::optional<std::size_t> neighbor;
            for (std::size_t d = 1; d <= config.adjacency_window && !neighbor; ++d) {
                if (hit.begin >= d && is_highway_term(hit.begin - d)) {
                    neighbor = hit.begin - d;
                } else if (std::size_t right = hit.end - 1 + d;
                           right < tokens.size() && is_highway_term(right)) {
                    neighbor = right;
                }
            }
            if (neighbor) {
                result.evidence.push_back(MatchEvidence{entry.id, TermClass::Indirect,
                                                        hit.phrase->text(), hit.begin, hit.end,
                                                        tokens[*neighbor], *neighbor});
                break;
            }
        }
    }
    return result;
}

} // namespace roadpulse
