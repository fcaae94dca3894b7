#include "roadpulse/lexicon.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <sstream>
#include <unordered_map>

#include <json.hpp>

#include "roadpulse/bundled_data.hpp"
#include "roadpulse/error.hpp"

namespace roadpulse {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

std::string to_lower_ascii(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) {
        out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    }
    return out;
}

/// Lowercases a phrase string and splits it on whitespace runs.
TermPhrase parse_phrase(std::string_view raw, const std::string& context) {
    TermPhrase phrase;
    std::string token;
    auto flush = [&] {
        if (!token.empty()) {
            phrase.tokens.push_back(token);
            token.clear();
        }
    };
    for (char c : raw) {
        if (std::isspace(static_cast<unsigned char>(c))) {
            flush();
        } else {
            token.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
        }
    }
    flush();
    if (phrase.tokens.empty()) {
        throw Error(ErrorCode::LexiconParse, "empty search term in " + context, context);
    }
    return phrase;
}

const json& require_member(const json& obj, const char* key, const std::string& context) {
    auto it = obj.find(key);
    if (it == obj.end()) {
        throw Error(ErrorCode::LexiconParse, context + ": missing \"" + key + "\"", key);
    }
    return *it;
}

std::vector<TermPhrase> parse_phrase_array(const json& arr, const std::string& context) {
    if (!arr.is_array()) {
        throw Error(ErrorCode::LexiconParse, context + ": expected an array of strings", context);
    }
    std::vector<TermPhrase> phrases;
    phrases.reserve(arr.size());
    for (const auto& item : arr) {
        if (!item.is_string()) {
            throw Error(ErrorCode::LexiconParse, context + ": expected an array of strings", context);
        }
        phrases.push_back(parse_phrase(item.get_ref<const std::string&>(), context));
    }
    return phrases;
}

std::vector<LatLon> parse_polyline(const json& arr, const std::string& context) {
    if (!arr.is_array()) {
        throw Error(ErrorCode::LexiconParse, context + ": polyline must be an array of [lat, lon] pairs",
                    "polyline");
    }
    std::vector<LatLon> line;
    line.reserve(arr.size());
    for (const auto& vertex : arr) {
        if (!vertex.is_array() || vertex.size() != 2 || !vertex[0].is_number() || !vertex[1].is_number()) {
            throw Error(ErrorCode::LexiconParse,
                        context + ": polyline vertices must be [lat, lon] number pairs", "polyline");
        }
        line.push_back(LatLon{vertex[0].get<double>(), vertex[1].get<double>()});
    }
    return line;
}

HighwayEntry parse_entry(const json& obj) {
    if (!obj.is_object()) {
        throw Error(ErrorCode::LexiconParse, "highway entry must be an object", "highways");
    }
    const json& id_json = require_member(obj, "id", "highway entry");
    if (!id_json.is_string() || id_json.get_ref<const std::string&>().empty()) {
        throw Error(ErrorCode::LexiconParse, "highway \"id\" must be a non-empty string", "id");
    }
    HighwayEntry entry;
    entry.id = id_json.get<std::string>();
    const std::string context = "highway \"" + entry.id + "\"";

    const json& name_json = require_member(obj, "name", context);
    if (!name_json.is_string()) {
        throw Error(ErrorCode::LexiconParse, context + ": \"name\" must be a string", "name");
    }
    entry.display_name = name_json.get<std::string>();
    entry.direct_terms = parse_phrase_array(require_member(obj, "direct", context), context + " direct");
    entry.indirect_terms =
        parse_phrase_array(require_member(obj, "indirect", context), context + " indirect");
    if (auto it = obj.find("polyline"); it != obj.end() && !it->is_null()) {
        entry.polyline = parse_polyline(*it, context);
    }
    return entry;
}

} // namespace

std::string TermPhrase::text() const {
    std::string out;
    for (std::size_t i = 0; i < tokens.size(); ++i) {
        if (i > 0) out.push_back(' ');
        out += tokens[i];
    }
    return out;
}

std::unordered_set<std::string> HighwayEntry::search_tokens() const {
    std::unordered_set<std::string> tokens;
    for (const auto* terms : {&direct_terms, &indirect_terms}) {
        for (const TermPhrase& phrase : *terms) {
            tokens.insert(phrase.tokens.begin(), phrase.tokens.end());
        }
    }
    return tokens;
}

bool Lexicon::operator==(const Lexicon& other) const {
    return entries == other.entries && highway_terms == other.highway_terms;
}

const HighwayEntry* Lexicon::find(std::string_view id) const {
    for (const HighwayEntry& entry : entries) {
        if (entry.id == id) return &entry;
    }
    return nullptr;
}

void Lexicon::validate() const {
    if (highway_terms.empty()) {
        throw Error(ErrorCode::LexiconParse, "highway_terms must not be empty", "highway_terms");
    }
    for (const std::string& term : highway_terms) {
        bool clean = !term.empty();
        for (char c : term) {
            unsigned char uc = static_cast<unsigned char>(c);
            if (std::isspace(uc) || std::isupper(uc)) clean = false;
        }
        if (!clean) {
            throw Error(ErrorCode::LexiconParse,
                        "highway_terms entries must be single lowercase tokens: \"" + term + "\"",
                        "highway_terms");
        }
    }

    std::unordered_set<std::string> seen_ids;
    // Owner of each direct phrase text, for the cross-highway disjointness check.
    std::unordered_map<std::string, std::string> direct_owner;
    for (const HighwayEntry& entry : entries) {
        if (entry.id.empty()) {
            throw Error(ErrorCode::LexiconParse, "highway id must be non-empty", "id");
        }
        if (!seen_ids.insert(entry.id).second) {
            throw Error(ErrorCode::DuplicateHighwayId, "duplicate highway id \"" + entry.id + "\"",
                        entry.id);
        }
        if (entry.direct_terms.empty() || entry.indirect_terms.empty()) {
            throw Error(ErrorCode::EmptyTermSet,
                        "highway \"" + entry.id + "\" needs at least one direct and one indirect term",
                        entry.id);
        }
        for (const auto* terms : {&entry.direct_terms, &entry.indirect_terms}) {
            for (const TermPhrase& phrase : *terms) {
                if (phrase.tokens.empty()) {
                    throw Error(ErrorCode::LexiconParse,
                                "empty search term in highway \"" + entry.id + "\"", entry.id);
                }
                for (const std::string& token : phrase.tokens) {
                    bool clean = !token.empty();
                    for (char c : token) {
                        unsigned char uc = static_cast<unsigned char>(c);
                        if (std::isspace(uc) || std::isupper(uc)) clean = false;
                    }
                    if (!clean) {
                        throw Error(ErrorCode::LexiconParse,
                                    "search term tokens must be non-empty lowercase: \"" + token +
                                        "\" in highway \"" + entry.id + "\"",
                                    entry.id);
                    }
                }
            }
        }
        for (const TermPhrase& phrase : entry.direct_terms) {
            auto [it, inserted] = direct_owner.emplace(phrase.text(), entry.id);
            if (!inserted && it->second != entry.id) {
                throw Error(ErrorCode::CrossHighwayDirectTermCollision,
                            "direct term \"" + phrase.text() + "\" claimed by both \"" + it->second +
                                "\" and \"" + entry.id + "\"",
                            phrase.text());
            }
        }
        if (!entry.polyline.empty()) {
            if (entry.polyline.size() < 2) {
                throw Error(ErrorCode::DegeneratePolyline,
                            "highway \"" + entry.id + "\" polyline needs at least 2 vertices", entry.id);
            }
            for (const LatLon& vertex : entry.polyline) {
                if (!std::isfinite(vertex.lat) || !std::isfinite(vertex.lon) ||
                    vertex.lat < -90.0 || vertex.lat > 90.0 || vertex.lon < -180.0 ||
                    vertex.lon > 180.0) {
                    throw Error(ErrorCode::DegeneratePolyline,
                                "highway \"" + entry.id + "\" polyline vertex out of range", entry.id);
                }
            }
        }
    }
}

Lexicon load_lexicon_from_string(std::string_view text) {
    json doc = json::parse(text, nullptr, /*allow_exceptions=*/false);
    if (doc.is_discarded() || !doc.is_object()) {
        throw Error(ErrorCode::LexiconParse, "lexicon is not a JSON object");
    }

    Lexicon lexicon;
    const json& terms = require_member(doc, "highway_terms", "lexicon");
    if (!terms.is_array()) {
        throw Error(ErrorCode::LexiconParse, "\"highway_terms\" must be an array of strings",
                    "highway_terms");
    }
    for (const auto& item : terms) {
        if (!item.is_string()) {
            throw Error(ErrorCode::LexiconParse, "\"highway_terms\" must be an array of strings",
                        "highway_terms");
        }
        std::string token = to_lower_ascii(item.get_ref<const std::string&>());
        if (token.empty()) {
            throw Error(ErrorCode::LexiconParse, "highway_terms entries must be non-empty",
                        "highway_terms");
        }
        lexicon.highway_terms.insert(std::move(token));
    }

    const json& highways = require_member(doc, "highways", "lexicon");
    if (!highways.is_array()) {
        throw Error(ErrorCode::LexiconParse, "\"highways\" must be an array", "highways");
    }
    lexicon.entries.reserve(highways.size());
    for (const auto& obj : highways) {
        lexicon.entries.push_back(parse_entry(obj));
    }

    lexicon.validate();
    return lexicon;
}

Lexicon load_lexicon(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error(ErrorCode::Io, "cannot open lexicon file: " + path, path);
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    try {
        return load_lexicon_from_string(buffer.str());
    } catch (const Error& e) {
        if (e.code() == ErrorCode::LexiconParse) {
            throw Error(ErrorCode::LexiconParse, path + ": " + e.what(), e.field());
        }
        throw;
    }
}

std::string serialize_lexicon(const Lexicon& lexicon) {
    ordered_json doc;
    doc["highway_terms"] = ordered_json::array();
    // Sets have no inherent order; emit sorted for reproducible output.
    std::vector<std::string> terms(lexicon.highway_terms.begin(), lexicon.highway_terms.end());
    std::sort(terms.begin(), terms.end());
    for (const std::string& term : terms) {
        doc["highway_terms"].push_back(term);
    }
    doc["highways"] = ordered_json::array();
    for (const HighwayEntry& entry : lexicon.entries) {
        ordered_json obj;
        obj["id"] = entry.id;
        obj["name"] = entry.display_name;
        obj["direct"] = ordered_json::array();
        for (const TermPhrase& phrase : entry.direct_terms) {
            obj["direct"].push_back(phrase.text());
        }
        obj["indirect"] = ordered_json::array();
        for (const TermPhrase& phrase : entry.indirect_terms) {
            obj["indirect"].push_back(phrase.text());
        }
        if (!entry.polyline.empty()) {
            obj["polyline"] = ordered_json::array();
            for (const LatLon& vertex : entry.polyline) {
                obj["polyline"].push_back(ordered_json::array({vertex.lat, vertex.lon}));
            }
        }
        doc["highways"].push_back(std::move(obj));
    }
    return doc.dump(2) + "\n";
}

const Lexicon& builtin_harvey_lexicon() {
    static const Lexicon lexicon = load_lexicon_from_string(detail::kHarveyLexiconJson);
    return lexicon;
}

} // namespace roadpulse
