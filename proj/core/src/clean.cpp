#include "roadpulse/clean.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <fstream>
#include <sstream>
#include <unordered_map>

#include "roadpulse/bundled_data.hpp"
#include "roadpulse/error.hpp"

namespace roadpulse {

namespace {

bool is_space_byte(char c) {
    return std::isspace(static_cast<unsigned char>(c)) != 0;
}

bool is_ascii_alnum(char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9');
}

char ascii_lower(char c) {
    return (c >= 'A' && c <= 'Z') ? static_cast<char>(c + ('a' - 'A')) : c;
}

bool prefix_matches_ci(std::string_view text, std::size_t pos, std::string_view prefix) {
    if (text.size() - pos < prefix.size()) return false;
    for (std::size_t k = 0; k < prefix.size(); ++k) {
        if (ascii_lower(text[pos + k]) != prefix[k]) return false;
    }
    return true;
}

// ---- lemmatizer -----------------------------------------------------------
//
// Small Porter-flavored suffix stripper. One rule fires per pass, chosen in
// a fixed order; passes repeat until the token stops changing, because a
// stripped stem can itself end in a strippable suffix ("browsed" -> "brows"
// -> "brow"). Handles plural "-s" families plus "-ed"/"-ing" with consonant
// undoubling and silent-e restoration. Not a linguistic lemmatizer; it is
// deterministic and keeps the domain vocabulary stable
// ("closed"/"closes"/"closing" -> "close").

const std::unordered_map<std::string_view, std::string_view>& lemma_exceptions() {
    static const std::unordered_map<std::string_view, std::string_view> table{
        {"buses", "bus"},
        {"goes", "go"},
        {"news", "news"},
        {"texas", "texas"},
        {"dallas", "dallas"},
    };
    return table;
}

bool is_vowel_at(std::string_view word, std::size_t i) {
    const char c = word[i];
    if (c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u') return true;
    // 'y' after a consonant acts as a vowel ("try", "carry").
    if (c == 'y' && i > 0) return !is_vowel_at(word, i - 1);
    return false;
}

bool has_vowel(std::string_view word) {
    for (std::size_t i = 0; i < word.size(); ++i) {
        if (is_vowel_at(word, i)) return true;
    }
    return false;
}

// Porter's measure: the number of vowel-to-consonant transitions.
int measure(std::string_view word) {
    int m = 0;
    bool in_vowel_run = false;
    for (std::size_t i = 0; i < word.size(); ++i) {
        const bool v = is_vowel_at(word, i);
        if (in_vowel_run && !v) ++m;
        in_vowel_run = v;
    }
    return m;
}

bool ends_cvc(std::string_view word) {
    const std::size_t n = word.size();
    if (n < 3) return false;
    if (is_vowel_at(word, n - 3) || !is_vowel_at(word, n - 2) || is_vowel_at(word, n - 1)) return false;
    const char last = word[n - 1];
    return last != 'w' && last != 'x' && last != 'y';
}

bool ends_with(std::string_view word, std::string_view suffix) {
    return word.size() >= suffix.size() && word.substr(word.size() - suffix.size()) == suffix;
}

// Stem repair after removing "-ed"/"-ing".
std::string repair_stem(std::string_view stem) {
    std::string out(stem);
    const std::size_t n = out.size();
    if (n >= 2 && out[n - 1] == out[n - 2] && !is_vowel_at(out, n - 1) && out[n - 1] != 'l' &&
        out[n - 1] != 's' && out[n - 1] != 'z') {
        out.pop_back(); // "stopp" -> "stop"
    } else if (ends_with(out, "at") || ends_with(out, "bl") || ends_with(out, "iz")) {
        out += 'e'; // "evacuat" -> "evacuate"
    } else if (measure(out) == 1 && ends_cvc(out)) {
        out += 'e'; // "clos" -> "close"
    }
    return out;
}

} // namespace

std::string strip_urls(std::string_view text) {
    std::string out;
    out.reserve(text.size());
    std::size_t i = 0;
    while (i < text.size()) {
        if (prefix_matches_ci(text, i, "http://") || prefix_matches_ci(text, i, "https://") ||
            prefix_matches_ci(text, i, "www.")) {
            while (i < text.size() && !is_space_byte(text[i])) ++i;
        } else {
            out += text[i++];
        }
    }
    return out;
}

std::vector<std::string> tokenize(std::string_view text) {
    std::vector<std::string> tokens;
    std::size_t i = 0;
    while (i < text.size()) {
        while (i < text.size() && is_space_byte(text[i])) ++i;
        const std::size_t start = i;
        while (i < text.size() && !is_space_byte(text[i])) ++i;
        if (i > start) tokens.emplace_back(text.substr(start, i - start));
    }
    return tokens;
}

std::optional<std::string> normalize_token(std::string_view token) {
    std::string out;
    out.reserve(token.size());
    for (const char c : token) {
        if (is_ascii_alnum(c)) {
            out += ascii_lower(c);
        } else if (c == '-') {
            out += c;
        }
        // everything else (punctuation, emoji bytes) is a stripped symbol
    }
    std::size_t first = 0;
    while (first < out.size() && out[first] == '-') ++first;
    std::size_t last = out.size();
    while (last > first && out[last - 1] == '-') --last;
    if (first == last) return std::nullopt;
    return out.substr(first, last - first);
}

namespace {

std::string lemma_pass(std::string_view token) {
    if (std::any_of(token.begin(), token.end(), [](char c) { return c >= '0' && c <= '9'; })) {
        return std::string(token);
    }
    const auto& exceptions = lemma_exceptions();
    if (const auto it = exceptions.find(token); it != exceptions.end()) {
        return std::string(it->second);
    }
    const std::size_t n = token.size();

    if (ends_with(token, "ies") && n >= 5) {
        return std::string(token.substr(0, n - 3)) + "y"; // cities -> city
    }
    if (ends_with(token, "ied") && n >= 5) {
        return std::string(token.substr(0, n - 3)) + "y"; // carried -> carry
    }
    if (ends_with(token, "eed")) {
        if (measure(token.substr(0, n - 3)) > 0) return std::string(token.substr(0, n - 1)); // agreed -> agree
        return std::string(token);                                                           // speed stays
    }
    if (ends_with(token, "es")) {
        if (ends_with(token, "sses") || ends_with(token, "ches") || ends_with(token, "shes") ||
            ends_with(token, "xes") || ends_with(token, "zes")) {
            const std::string_view stem = token.substr(0, n - 2);
            return stem.size() >= 3 ? std::string(stem) : std::string(token); // boxes -> box
        }
        if (ends_with(token, "aes") || ends_with(token, "ees") || ends_with(token, "oes")) {
            return std::string(token);
        }
        if (n - 2 >= 3) return std::string(token.substr(0, n - 1)); // lanes -> lane, closes -> close
        return std::string(token);
    }
    if (ends_with(token, "s") && !ends_with(token, "ss") && !ends_with(token, "us") &&
        !ends_with(token, "is")) {
        const std::string_view stem = token.substr(0, n - 1);
        if (stem.size() >= 3) return std::string(stem); // songs -> song
        return std::string(token);
    }
    if (ends_with(token, "ed")) {
        const std::string_view stem = token.substr(0, n - 2);
        if (stem.size() >= 3 && has_vowel(stem)) return repair_stem(stem); // closed -> close
        return std::string(token);
    }
    if (ends_with(token, "ing")) {
        const std::string_view stem = token.substr(0, n - 3);
        if (stem.size() >= 3 && has_vowel(stem)) return repair_stem(stem); // flooding -> flood
        return std::string(token);
    }
    return std::string(token);
}

} // namespace

std::string lemmatize(std::string_view token) {
    std::string current(token);
    for (;;) {
        std::string next = lemma_pass(current);
        if (next == current) return current;
        current = std::move(next);
    }
}

std::vector<std::string> remove_stopwords(std::vector<std::string> tokens, const Stoplist& stoplist) {
    std::erase_if(tokens, [&](const std::string& t) { return stoplist.contains(t); });
    return tokens;
}

Stoplist Stoplist::from_words(const std::vector<std::string>& words) {
    Stoplist list;
    for (const std::string& word : words) {
        const auto normalized = normalize_token(word);
        if (!normalized) continue;
        list.words_.insert(lemmatize(*normalized));
    }
    return list;
}

namespace {

std::vector<std::string> parse_stopword_lines(std::istream& in) {
    std::vector<std::string> words;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        const std::size_t begin = line.find_first_not_of(" \t");
        if (begin == std::string::npos) continue;
        if (line[begin] == '#') continue;
        const std::size_t end = line.find_last_not_of(" \t");
        words.push_back(line.substr(begin, end - begin + 1));
    }
    return words;
}

} // namespace

const Stoplist& Stoplist::bundled() {
    static const Stoplist list = [] {
        std::istringstream in{std::string(detail::kBundledStopwords)};
        return from_words(parse_stopword_lines(in));
    }();
    return list;
}

Stoplist Stoplist::load_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw Error(ErrorCode::StopwordParse, "cannot open stopword file '" + path + "'");
    }
    Stoplist list = from_words(parse_stopword_lines(in));
    if (list.size() == 0) {
        throw Error(ErrorCode::StopwordParse, "stopword file '" + path + "' has no entries");
    }
    return list;
}

CleanedTweet clean_text(const TweetRecord& record, const Stoplist& stoplist) {
    return CleanedTweet{record.id, clean_tokens(record.text, stoplist)};
}

std::vector<std::string> clean_tokens(std::string_view text, const Stoplist& stoplist) {
    std::vector<std::string> tokens;
    for (const std::string& raw : tokenize(strip_urls(text))) {
        const auto normalized = normalize_token(raw);
        if (!normalized) continue;
        tokens.push_back(lemmatize(*normalized));
    }
    return remove_stopwords(std::move(tokens), stoplist);
}

} // namespace roadpulse
