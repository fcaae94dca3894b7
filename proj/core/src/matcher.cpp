#include "roadpulse/matcher.hpp"

#include <algorithm>
#include <deque>

namespace roadpulse {

std::string_view to_string(TermClass cls) {
    switch (cls) {
        case TermClass::Direct: return "direct";
        case TermClass::Indirect: return "indirect";
        case TermClass::HighwayTerm: return "highway-term";
    }
    return "unknown";
}

void CompiledMatcher::add_pattern(const TermPhrase& phrase, PatternTag tag) {
    // Reuse the pattern slot if this exact token sequence is already known.
    for (Pattern& existing : patterns_) {
        if (existing.tokens == phrase.tokens) {
            if (std::find(existing.tags.begin(), existing.tags.end(), tag) == existing.tags.end()) {
                existing.tags.push_back(tag);
            }
            return;
        }
    }

    std::size_t pattern_index = patterns_.size();
    Pattern pattern;
    pattern.tokens = phrase.tokens;
    pattern.text = phrase.text();
    pattern.tags.push_back(tag);
    patterns_.push_back(std::move(pattern));

    int state = 0;
    for (const std::string& token : phrase.tokens) {
        auto [it, inserted] = vocab_.try_emplace(token, static_cast<int>(vocab_.size()));
        int symbol = it->second;
        auto edge = nodes_[state].next.find(symbol);
        if (edge == nodes_[state].next.end()) {
            nodes_.push_back(Node{});
            edge = nodes_[state].next.emplace(symbol, static_cast<int>(nodes_.size() - 1)).first;
        }
        state = edge->second;
    }
    nodes_[state].output.push_back(pattern_index);
}

void CompiledMatcher::build_links() {
    std::deque<int> queue;
    for (auto& [symbol, child] : nodes_[0].next) {
        nodes_[child].fail = 0;
        queue.push_back(child);
    }
    while (!queue.empty()) {
        int state = queue.front();
        queue.pop_front();
        for (auto& [symbol, child] : nodes_[state].next) {
            int fallback = nodes_[state].fail;
            while (fallback != 0 && !nodes_[fallback].next.count(symbol)) {
                fallback = nodes_[fallback].fail;
            }
            auto edge = nodes_[fallback].next.find(symbol);
            int target = (edge != nodes_[fallback].next.end() && edge->second != child)
                             ? edge->second
                             : 0;
            nodes_[child].fail = target;
            // Matches ending at the fail state also end here.
            const auto& inherited = nodes_[target].output;
            nodes_[child].output.insert(nodes_[child].output.end(), inherited.begin(),
                                        inherited.end());
            queue.push_back(child);
        }
    }
}

CompiledMatcher CompiledMatcher::compile(const Lexicon& lexicon) {
    CompiledMatcher matcher;
    matcher.nodes_.push_back(Node{}); // root

    for (std::size_t i = 0; i < lexicon.entries.size(); ++i) {
        const HighwayEntry& entry = lexicon.entries[i];
        for (const TermPhrase& phrase : entry.direct_terms) {
            matcher.add_pattern(phrase, PatternTag{i, TermClass::Direct});
        }
        for (const TermPhrase& phrase : entry.indirect_terms) {
            matcher.add_pattern(phrase, PatternTag{i, TermClass::Indirect});
        }
    }
    // Deterministic insertion order for the unordered highway_terms set.
    std::vector<std::string> highway_terms(lexicon.highway_terms.begin(),
                                           lexicon.highway_terms.end());
    std::sort(highway_terms.begin(), highway_terms.end());
    for (const std::string& term : highway_terms) {
        TermPhrase phrase;
        phrase.tokens.push_back(term);
        matcher.add_pattern(phrase, PatternTag{PatternTag::kNoEntry, TermClass::HighwayTerm});
    }

    matcher.build_links();
    return matcher;
}

void CompiledMatcher::find_all(std::span<const std::string> tokens,
                               std::vector<TokenMatch>& out) const {
    out.clear();
    int state = 0;
    for (std::size_t i = 0; i < tokens.size(); ++i) {
        auto vocab_it = vocab_.find(tokens[i]);
        if (vocab_it == vocab_.end()) {
            // Token outside every pattern: no state can extend through it.
            state = 0;
            continue;
        }
        int symbol = vocab_it->second;
        while (state != 0 && !nodes_[state].next.count(symbol)) {
            state = nodes_[state].fail;
        }
        auto edge = nodes_[state].next.find(symbol);
        state = (edge != nodes_[state].next.end()) ? edge->second : 0;
        for (std::size_t pattern_index : nodes_[state].output) {
            std::size_t length = patterns_[pattern_index].tokens.size();
            out.push_back(TokenMatch{i + 1 - length, i + 1, pattern_index});
        }
    }
    std::sort(out.begin(), out.end());
}

std::vector<TokenMatch> CompiledMatcher::find_all(std::span<const std::string> tokens) const {
    std::vector<TokenMatch> out;
    find_all(tokens, out);
    return out;
}

} // namespace roadpulse
