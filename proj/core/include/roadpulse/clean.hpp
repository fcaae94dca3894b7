#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "roadpulse/types.hpp"

namespace roadpulse {

/// Ordered, normalized token sequence plus a back-reference to its record.
/// Every token is lowercase, non-empty, free of stripped symbols, lemmatized
/// and not a stopword. Order is kept because mapping needs token adjacency.
struct CleanedTweet {
    std::string record_id;
    std::vector<std::string> tokens;

    bool operator==(const CleanedTweet&) const = default;
};

/// Stopword set. Entries pass through the same normalize/lemmatize steps as
/// corpus tokens so membership tests happen in the pipeline's token space.
class Stoplist {
public:
    static Stoplist from_words(const std::vector<std::string>& words);

    /// Bundled list of common English function words (plus the Twitter
    /// artifacts "rt" and "amp").
    static const Stoplist& bundled();

    /// Plain-text file, one token per line, '#' comments and blank lines
    /// allowed. Throws Error(StopwordParse) on unreadable files or files
    /// yielding no entries.
    static Stoplist load_file(const std::string& path);

    bool contains(const std::string& token) const { return words_.count(token) != 0; }
    std::size_t size() const noexcept { return words_.size(); }

private:
    std::unordered_set<std::string> words_;
};

/// Removes every substring starting with "http://", "https://" or "www."
/// (ASCII case-insensitive) up to the next whitespace. Surrounding text,
/// including the whitespace itself, is unchanged.
std::string strip_urls(std::string_view text);

/// Splits on runs of whitespace; never yields empty tokens.
std::vector<std::string> tokenize(std::string_view text);

/// Lowercases and removes symbol characters: every byte that is not an ASCII
/// letter, digit or hyphen is dropped, then leading/trailing hyphens are
/// stripped. Returns nullopt when nothing survives ("!!!", bare emoji).
std::optional<std::string> normalize_token(std::string_view token);

/// Deterministic rule-based suffix reduction ("closed" -> "close",
/// "flooding" -> "flood"), applied until the token stops changing, so
/// lemmatize(lemmatize(t)) == lemmatize(t). Tokens containing digits are
/// returned unchanged.
std::string lemmatize(std::string_view token);

/// Keeps exactly the tokens not in the stoplist, order preserved.
std::vector<std::string> remove_stopwords(std::vector<std::string> tokens, const Stoplist& stoplist);

/// Six-step composition: strip URLs, tokenize, lowercase/strip symbols,
/// lemmatize, drop emptied tokens, drop stopwords.
CleanedTweet clean_text(const TweetRecord& record, const Stoplist& stoplist);

/// clean_text on raw text, without a record.
std::vector<std::string> clean_tokens(std::string_view text, const Stoplist& stoplist);

} // namespace roadpulse
