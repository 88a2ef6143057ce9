#pragma once

#include <algorithm>
#include <array>
#include <cctype>
#include <cstring>
#include <fstream>
#include <regex>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

namespace mailgen {

// Reserved tokens emitted by the preprocessing pipeline. The body markers use
// angle brackets; the in-text tags are plain tokens.
inline constexpr std::string_view kStartTag = "<SOT>";
inline constexpr std::string_view kEndTag = "<EOT>";
inline constexpr std::string_view kEntityTag = "ent";
inline constexpr std::string_view kEmailTag = "emailID";
inline constexpr std::string_view kLinkTag = "link";
inline constexpr std::string_view kUnknownTag = "<UNK>";

inline std::vector<std::string> split_whitespace(std::string_view text) {
    std::vector<std::string> tokens;
    std::size_t i = 0;
    while (i < text.size()) {
        while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
        std::size_t start = i;
        while (i < text.size() && !std::isspace(static_cast<unsigned char>(text[i]))) ++i;
        if (i > start) tokens.emplace_back(text.substr(start, i - start));
    }
    return tokens;
}

inline std::string join_tokens(const std::vector<std::string>& tokens) {
    std::string out;
    for (std::size_t i = 0; i < tokens.size(); ++i) {
        if (i) out += ' ';
        out += tokens[i];
    }
    return out;
}

inline std::string lowercase_ascii(std::string s) {
    for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return s;
}

/// Pluggable named-entity recognizer: decides whether one whitespace token
/// refers to a person or location. `sentence_initial` tells the recognizer
/// whether the token opens a sentence (where English capitalizes anyway).
class EntityRecognizer {
public:
    virtual ~EntityRecognizer() = default;
    virtual bool is_entity(std::string_view token, bool sentence_initial) const = 0;
};

namespace detail {

// Compact person/location lexicon backing the default recognizer.
inline const std::unordered_set<std::string>& default_entity_lexicon() {
    static const std::unordered_set<std::string> lex = {
        // person names
        "john", "mary", "james", "robert", "michael", "william", "david", "richard",
        "joseph", "thomas", "charles", "chris", "daniel", "matthew", "anthony", "mark",
        "donald", "steven", "paul", "andrew", "joshua", "kenneth", "kevin", "brian",
        "george", "timothy", "ronald", "jason", "edward", "jeffrey", "ryan", "jacob",
        "gary", "nicholas", "eric", "jonathan", "stephen", "larry", "justin", "scott",
        "brandon", "benjamin", "samuel", "gregory", "alexander", "patrick", "frank",
        "raymond", "jack", "dennis", "jerry", "patricia", "jennifer", "linda",
        "elizabeth", "barbara", "susan", "jessica", "sarah", "karen", "lisa", "nancy",
        "betty", "margaret", "sandra", "ashley", "kimberly", "emily", "donna",
        "michelle", "carol", "amanda", "dorothy", "melissa", "deborah", "stephanie",
        "rebecca", "sharon", "laura", "cynthia", "kathleen", "amy", "angela", "anna",
        "ruth", "brenda", "pamela", "nicole", "katherine", "virginia", "catherine",
        "christine", "samantha", "debra", "janet", "rachel", "carolyn", "emma",
        "maria", "heather", "diane", "julie", "joyce", "victoria", "alice", "smith",
        "johnson", "williams", "brown", "jones", "miller", "davis", "garcia", "wilson",
        "anderson", "taylor", "moore", "jackson", "martin", "lee", "thompson", "white",
        "harris", "clark", "lewis", "robinson", "walker", "hall", "allen", "young",
        "king", "wright", "lopez", "hill", "green", "adams", "baker", "nelson",
        // locations
        "london", "paris", "berlin", "madrid", "rome", "vienna", "amsterdam", "dublin",
        "moscow", "tokyo", "beijing", "delhi", "mumbai", "sydney", "melbourne",
        "toronto", "vancouver", "montreal", "houston", "dallas", "austin", "chicago",
        "boston", "seattle", "denver", "atlanta", "miami", "orlando", "portland",
        "phoenix", "philadelphia", "detroit", "baltimore", "pittsburgh", "cleveland",
        "minneapolis", "omaha", "tulsa", "texas", "california", "florida", "nevada",
        "arizona", "oregon", "colorado", "georgia", "virginia", "ohio", "michigan",
        "illinois", "oklahoma", "louisiana", "alabama", "tennessee", "kentucky",
        "america", "england", "france", "germany", "spain", "italy", "ireland",
        "scotland", "canada", "mexico", "brazil", "china", "japan", "india",
        "australia", "russia", "europe", "asia", "africa",
    };
    return lex;
}

}  // namespace detail

/// Default heuristic recognizer: a token is an entity when its alphabetic core
/// is in the shipped name/location lexicon, or when it is capitalized in a
/// non-sentence-initial position. Standalone "I" and its contractions are
/// exempt from the capitalization rule.
class DefaultEntityRecognizer : public EntityRecognizer {
public:
    DefaultEntityRecognizer() : lexicon_(&detail::default_entity_lexicon()) {}

    explicit DefaultEntityRecognizer(std::unordered_set<std::string> extra)
        : lexicon_(&detail::default_entity_lexicon()), extra_(std::move(extra)) {}

    bool is_entity(std::string_view token, bool sentence_initial) const override {
        if (token.empty()) return false;
        const std::string lower = lowercase_ascii(std::string(token));
        if (lexicon_->count(lower) || extra_.count(lower)) return true;
        static const std::unordered_set<std::string> exempt = {"I", "I'm", "I'll", "I've", "I'd"};
        if (exempt.count(std::string(token))) return false;
        return !sentence_initial && std::isupper(static_cast<unsigned char>(token[0]));
    }

private:
    const std::unordered_set<std::string>* lexicon_;
    std::unordered_set<std::string> extra_;
};

namespace detail {

// Sentinels protect already-replaced tags from the lowercasing and
// special-character passes. Digits survive both, so the payload is a digit.
inline constexpr char kSentinel = '\x01';
inline const std::string kEmailSentinel = "\x01\x31\x01";  // -> emailID
inline const std::string kLinkSentinel = "\x01\x32\x01";   // -> link
inline const std::string kEntSentinel = "\x01\x33\x01";    // -> ent

inline std::string strip_html(const std::string& text) {
    static const std::regex tag_re("<[^>]*>");
    static const std::regex entity_re("&#?[A-Za-z0-9]+;");
    std::string out = std::regex_replace(text, tag_re, " ");
    return std::regex_replace(out, entity_re, " ");
}

inline std::string strip_non_ascii(const std::string& text) {
    std::string out;
    out.reserve(text.size());
    for (unsigned char c : text) {
        out += (c >= 0x80 || (c < 0x20 && c != '\t' && c != '\n' && c != '\r')) ? ' '
                                                                                : static_cast<char>(c);
    }
    return out;
}

inline std::string tag_email_addresses(const std::string& text) {
    static const std::regex email_re(
        R"([A-Za-z0-9._%+-]+@[A-Za-z0-9-]+(\.[A-Za-z0-9-]+)+)");
    return std::regex_replace(text, email_re, kEmailSentinel);
}

inline std::string tag_urls(const std::string& text) {
    static const std::regex url_re(R"((https?://[^\s]+|www\.[^\s]+))");
    std::string out;
    out.reserve(text.size());
    auto begin = std::sregex_iterator(text.begin(), text.end(), url_re);
    std::size_t last = 0;
    for (auto it = begin; it != std::sregex_iterator(); ++it) {
        std::string match = it->str();
        // Trailing sentence punctuation belongs to the sentence, not the URL.
        std::size_t keep = match.size();
        while (keep > 0 && std::strchr(".,!?;:'\")]", match[keep - 1]) != nullptr) --keep;
        out += text.substr(last, static_cast<std::size_t>(it->position()) - last);
        out += kLinkSentinel;
        out += match.substr(keep);
        last = static_cast<std::size_t>(it->position()) + match.size();
    }
    out += text.substr(last);
    return out;
}

// Splits a token into (leading punctuation, core, trailing punctuation).
struct TokenCore {
    std::string_view lead, core, trail;
};

inline TokenCore split_token_core(std::string_view token) {
    static constexpr std::string_view punct = ".,!?;:'\"()[]-";
    std::size_t b = 0, e = token.size();
    while (b < e && punct.find(token[b]) != std::string_view::npos) ++b;
    while (e > b && punct.find(token[e - 1]) != std::string_view::npos) --e;
    return {token.substr(0, b), token.substr(b, e - b), token.substr(e)};
}

inline std::string tag_entities(const std::string& text, const EntityRecognizer& recognizer) {
    std::vector<std::string> tokens = split_whitespace(text);
    bool sentence_initial = true;
    for (std::string& token : tokens) {
        if (token.find(kSentinel) != std::string::npos) {
            sentence_initial = false;
            continue;
        }
        // A literal canonical emailID tag (from already-clean input) must not
        // be lowercased away; fold it back into its sentinel.
        if (token == kEmailTag) {
            token = kEmailSentinel;
            sentence_initial = false;
            continue;
        }
        const TokenCore parts = split_token_core(token);
        const bool was_initial = sentence_initial;
        // A bare punctuation token keeps everything in `lead`; scan the whole
        // token for a sentence end in that case.
        const std::string_view end_scan =
            parts.core.empty() ? std::string_view(token) : parts.trail;
        sentence_initial = end_scan.find_first_of(".!?") != std::string_view::npos;
        if (parts.core.empty()) continue;
        if (recognizer.is_entity(parts.core, was_initial)) {
            token = std::string(parts.lead) + kEntSentinel + std::string(parts.trail);
        }
    }
    return join_tokens(tokens);
}

inline std::string remove_special_characters(const std::string& text) {
    std::string out;
    out.reserve(text.size());
    for (char c : text) {
        const unsigned char u = static_cast<unsigned char>(c);
        const bool keep = (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '.' ||
                          c == ',' || c == '?' || c == '!' || c == '\'' || c == '-' ||
                          c == kSentinel || std::isspace(u);
        out += keep ? c : ' ';
    }
    return out;
}

inline std::string pad_sentence_punctuation(const std::string& text) {
    std::string out;
    out.reserve(text.size() + 16);
    for (char c : text) {
        if (c == '.' || c == ',' || c == '?' || c == '!') {
            out += ' ';
            out += c;
            out += ' ';
        } else {
            out += c;
        }
    }
    return out;
}

inline void replace_all(std::string& text, const std::string& from, const std::string& to) {
    std::size_t pos = 0;
    while ((pos = text.find(from, pos)) != std::string::npos) {
        text.replace(pos, from.size(), to);
        pos += to.size();
    }
}

}  // namespace detail

/// Applies the full cleaning/tagging pipeline to one raw email body:
/// HTML and non-ASCII removal, email/URL/entity tagging, lowercasing,
/// special-character removal, punctuation isolation, whitespace collapsing,
/// and start/end-of-text markers. Total and idempotent.
inline std::string preprocess_email(const std::string& raw, const EntityRecognizer& recognizer) {
    std::string text = detail::strip_html(raw);
    text = detail::strip_non_ascii(text);
    text = detail::tag_email_addresses(text);
    text = detail::tag_urls(text);
    text = detail::tag_entities(text, recognizer);
    text = lowercase_ascii(std::move(text));
    text = detail::remove_special_characters(text);
    text = detail::pad_sentence_punctuation(text);
    detail::replace_all(text, detail::kEmailSentinel, std::string(kEmailTag));
    detail::replace_all(text, detail::kLinkSentinel, std::string(kLinkTag));
    detail::replace_all(text, detail::kEntSentinel, std::string(kEntityTag));
    const std::string body = join_tokens(split_whitespace(text));
    std::string out(kStartTag);
    if (!body.empty()) {
        out += ' ';
        out += body;
    }
    out += ' ';
    out += kEndTag;
    return out;
}

inline std::string preprocess_email(const std::string& raw) {
    return preprocess_email(raw, DefaultEntityRecognizer());
}

/// Tokens of a clean body with the start/end markers dropped.
inline std::vector<std::string> body_tokens(const std::string& clean_body) {
    std::vector<std::string> tokens = split_whitespace(clean_body);
    std::erase_if(tokens, [](const std::string& t) { return t == kStartTag || t == kEndTag; });
    return tokens;
}

inline bool is_sentence_terminator(std::string_view token) {
    return token == "." || token == "!" || token == "?";
}

/// Splits marker-free tokens into sentences. A sentence runs up to and
/// including its terminator token; trailing tokens form a final sentence.
inline std::vector<std::vector<std::string>> split_sentences(
    const std::vector<std::string>& tokens) {
    std::vector<std::vector<std::string>> sentences;
    std::vector<std::string> current;
    for (const std::string& token : tokens) {
        current.push_back(token);
        if (is_sentence_terminator(token)) {
            sentences.push_back(std::move(current));
            current.clear();
        }
    }
    if (!current.empty()) sentences.push_back(std::move(current));
    return sentences;
}

/// Levenshtein edit distance, early-exits once the distance exceeds `cap`.
inline int edit_distance_capped(std::string_view a, std::string_view b, int cap) {
    const int la = static_cast<int>(a.size()), lb = static_cast<int>(b.size());
    if (std::abs(la - lb) > cap) return cap + 1;
    std::vector<int> prev(static_cast<std::size_t>(lb) + 1), cur(static_cast<std::size_t>(lb) + 1);
    for (int j = 0; j <= lb; ++j) prev[static_cast<std::size_t>(j)] = j;
    for (int i = 1; i <= la; ++i) {
        cur[0] = i;
        int row_min = cur[0];
        for (int j = 1; j <= lb; ++j) {
            const int sub = prev[static_cast<std::size_t>(j - 1)] +
                            (a[static_cast<std::size_t>(i - 1)] != b[static_cast<std::size_t>(j - 1)]);
            cur[static_cast<std::size_t>(j)] =
                std::min({prev[static_cast<std::size_t>(j)] + 1,
                          cur[static_cast<std::size_t>(j - 1)] + 1, sub});
            row_min = std::min(row_min, cur[static_cast<std::size_t>(j)]);
        }
        if (row_min > cap) return cap + 1;
        std::swap(prev, cur);
    }
    return prev[static_cast<std::size_t>(lb)];
}

}  // namespace mailgen
