#pragma once

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <vector>

#include <nlohmann/json.hpp>

#include "mailgen/text.hpp"

namespace mailgen {

/// Lexicons backing the spoofing-cue detector.
struct CueLexicons {
    std::unordered_set<std::string> organizations;
    std::unordered_set<std::string> action_verbs;
    std::unordered_set<std::string> urgency_adverbs;
    std::unordered_set<std::string> english_dictionary;
    int max_edit_distance = 1;
};

enum class CueCategory {
    organization,
    action_verb,
    urgency_adverb,
    link,
    misspelled_organization,
    non_english,
};

inline const std::vector<CueCategory>& all_cue_categories() {
    static const std::vector<CueCategory> all = {
        CueCategory::organization,        CueCategory::action_verb,
        CueCategory::urgency_adverb,      CueCategory::link,
        CueCategory::misspelled_organization, CueCategory::non_english,
    };
    return all;
}

inline const char* to_string(CueCategory category) {
    switch (category) {
        case CueCategory::organization: return "organization";
        case CueCategory::action_verb: return "action_verb";
        case CueCategory::urgency_adverb: return "urgency_adverb";
        case CueCategory::link: return "link";
        case CueCategory::misspelled_organization: return "misspelled_organization";
        case CueCategory::non_english: return "non_english";
    }
    return "?";
}

struct CueMatch {
    std::string token;
    int position = 0;  // index among non-marker tokens
};

struct CueReport {
    std::map<CueCategory, std::vector<CueMatch>> matches;
    int word_count = 0;

    double density(CueCategory category) const {
        if (word_count == 0) return 0.0;
        auto it = matches.find(category);
        const std::size_t n = it == matches.end() ? 0 : it->second.size();
        return static_cast<double>(n) / static_cast<double>(word_count);
    }
};

namespace detail {

inline const char* kDefaultOrganizations[] = {
    "paypal", "ebay", "amazon", "microsoft", "apple", "dell", "google", "visa",
    "mastercard", "citibank", "chase", "hsbc", "barclays", "irs", "ups", "fedex",
    "dhl", "netflix", "adobe", "oracle", "intel", "walmart", "verizon", "comcast",
};

inline const char* kDefaultActionVerbs[] = {
    "click", "follow", "visit", "go", "update", "apply", "submit",
    "confirm", "cancel", "dispute", "enroll", "login", "answer", "reply",
};

inline const char* kDefaultUrgencyAdverbs[] = {
    "today", "instantly", "straightaway", "straight", "directly", "once", "urgently",
    "desperately", "immediately", "soon", "shortly", "presently", "before", "ahead", "front",
};

// Compact core dictionary used when no lexicon file is available. The shipped
// data/lexicons.json carries a much larger frequency list.
inline const char* kCoreDictionary[] = {
    "the", "a", "an", "and", "or", "but", "if", "then", "else", "of", "to", "in", "on",
    "at", "by", "for", "from", "with", "without", "about", "into", "over", "under",
    "between", "through", "during", "after", "above", "below", "up", "down", "out",
    "off", "again", "further", "here", "there", "where", "when", "why", "how", "what",
    "which", "who", "whom", "whose", "this", "that", "these", "those", "is", "are",
    "was", "were", "be", "been", "being", "am", "have", "has", "had", "having", "do",
    "does", "did", "doing", "will", "would", "shall", "should", "can", "could", "may",
    "might", "must", "not", "no", "nor", "only", "own", "same", "so", "than", "too",
    "very", "just", "also", "each", "few", "more", "most", "other", "some", "such",
    "all", "any", "both", "it", "its", "itself", "they", "them", "their", "theirs",
    "we", "us", "our", "ours", "you", "your", "yours", "he", "him", "his", "she",
    "her", "hers", "i", "me", "my", "mine", "as", "because", "until", "while", "yes",
    "please", "thanks", "thank", "regards", "sincerely", "dear", "hello", "hi", "hey",
    "goodbye", "bye", "welcome", "sorry", "meeting", "meet", "call", "calls", "phone",
    "schedule", "scheduled", "agenda", "appointment", "conference", "team", "staff",
    "manager", "boss", "colleague", "client", "customer", "office", "work", "working",
    "worked", "job", "project", "projects", "task", "tasks", "report", "reports",
    "document", "documents", "file", "files", "copy", "note", "notes", "memo",
    "letter", "message", "messages", "mail", "email", "emails", "inbox", "reply",
    "forward", "send", "sent", "receive", "received", "attach", "attached",
    "attachment", "review", "reviewed", "approve", "approved", "sign", "signed",
    "agree", "agreed", "agreement", "contract", "deal", "offer", "proposal",
    "question", "questions", "issue", "issues", "problem", "problems", "concern",
    "idea", "ideas", "plan", "plans", "news", "information", "info", "details",
    "detail", "item", "items", "list", "summary", "account", "accounts", "bank",
    "banking", "money", "cash", "payment", "pay", "paid", "invoice", "receipt",
    "balance", "transfer", "funds", "credit", "debit", "card", "cards", "price",
    "cost", "costs", "fee", "fees", "charge", "tax", "taxes", "budget", "salary",
    "statement", "statements", "password", "username", "user", "secure", "security",
    "verify", "time", "day", "days", "week", "weeks", "weekend", "month", "months",
    "year", "years", "hour", "hours", "minute", "minutes", "moment", "morning",
    "afternoon", "evening", "night", "tonight", "tomorrow", "yesterday", "monday",
    "tuesday", "wednesday", "thursday", "friday", "saturday", "sunday", "january",
    "february", "march", "april", "june", "july", "august", "september", "october",
    "november", "december", "new", "old", "good", "bad", "great", "fine", "nice",
    "big", "small", "large", "little", "long", "short", "early", "late", "next",
    "last", "first", "second", "third", "final", "free", "busy", "available", "ready",
    "quick", "quickly", "slow", "now", "never", "always", "often", "sometimes",
    "lunch", "dinner", "breakfast", "coffee", "travel", "trip", "flight", "hotel",
    "vacation", "holiday", "home", "house", "room", "family", "friend", "friends",
    "people", "person", "everyone", "anyone", "someone", "thing", "things", "way",
    "ways", "need", "needs", "needed", "want", "wants", "wanted", "know", "knows",
    "knew", "known", "think", "thinks", "thought", "make", "makes", "made", "take",
    "takes", "took", "get", "gets", "got", "give", "gives", "gave", "see", "sees",
    "saw", "seen", "look", "looks", "looked", "find", "found", "tell", "told", "ask",
    "asked", "talk", "talked", "speak", "spoke", "discuss", "discussed", "write",
    "wrote", "written", "read", "let", "lets", "keep", "keeps", "kept", "help",
    "helps", "helped", "start", "started", "end", "ended", "finish", "finished",
    "come", "comes", "came", "leave", "left", "stay", "stayed", "change", "changes",
    "changed", "check", "checked", "open", "opened", "close", "closed", "use", "used",
    "using", "try", "tried", "feel", "felt", "seem", "seems", "seemed", "back",
    "still", "well", "better", "best", "worse", "worst", "much", "many", "lot",
    "number", "numbers", "part", "place", "case", "point", "fact", "group", "company",
    "business", "market", "service", "services", "system", "gift", "prize", "winner",
    "link", "links", "website", "web", "site", "page", "online", "internet",
};

inline void lower_dedupe_into(std::unordered_set<std::string>& out,
                              const std::vector<std::string>& words) {
    for (const std::string& w : words) out.insert(lowercase_ascii(w));
}

}  // namespace detail

/// Built-in lexicons seeded from the common-spoofing-cue categories.
inline CueLexicons default_cue_lexicons() {
    CueLexicons lex;
    for (const char* w : detail::kDefaultOrganizations) lex.organizations.insert(w);
    for (const char* w : detail::kDefaultActionVerbs) lex.action_verbs.insert(w);
    for (const char* w : detail::kDefaultUrgencyAdverbs) lex.urgency_adverbs.insert(w);
    for (const char* w : detail::kCoreDictionary) lex.english_dictionary.insert(w);
    lex.max_edit_distance = 1;
    return lex;
}

/// Loads lexicons from a JSON file of category keys mapping to string arrays.
/// A missing path falls back to the built-in defaults. A present but empty or
/// malformed category is an error. The "persuasion_principles" key is
/// reserved and ignored.
inline CueLexicons load_lexicons(const std::filesystem::path& path) {
    if (path.empty() || !std::filesystem::exists(path)) return default_cue_lexicons();
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open lexicon file: " + path.string());
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw std::runtime_error("malformed lexicon file " + path.string() + ": " + e.what());
    }
    if (!doc.is_object()) {
        throw std::runtime_error("malformed lexicon file " + path.string() + ": not an object");
    }

    CueLexicons lex = default_cue_lexicons();
    auto read_category = [&](const char* name, std::unordered_set<std::string>& target) {
        if (!doc.contains(name)) return;
        const nlohmann::json& arr = doc[name];
        if (!arr.is_array() || arr.empty()) {
            throw std::runtime_error("lexicon category '" + std::string(name) +
                                     "' must be a non-empty array");
        }
        std::vector<std::string> words;
        for (const nlohmann::json& w : arr) {
            if (!w.is_string()) {
                throw std::runtime_error("lexicon category '" + std::string(name) +
                                         "' contains a non-string entry");
            }
            words.push_back(w.get<std::string>());
        }
        target.clear();
        detail::lower_dedupe_into(target, words);
    };
    read_category("organizations", lex.organizations);
    read_category("action_verbs", lex.action_verbs);
    read_category("urgency_adverbs", lex.urgency_adverbs);
    read_category("english_dictionary", lex.english_dictionary);
    if (doc.contains("max_edit_distance")) {
        if (!doc["max_edit_distance"].is_number_integer()) {
            throw std::runtime_error("lexicon category 'max_edit_distance' must be an integer");
        }
        lex.max_edit_distance = doc["max_edit_distance"].get<int>();
    }
    return lex;
}

namespace detail {

inline bool has_alpha(std::string_view token) {
    return std::any_of(token.begin(), token.end(), [](unsigned char c) {
        return std::isalpha(c) != 0;
    });
}

inline bool near_organization(const std::string& token, const CueLexicons& lex) {
    for (const std::string& org : lex.organizations) {
        if (edit_distance_capped(token, org, lex.max_edit_distance) <= lex.max_edit_distance) {
            return true;
        }
    }
    return false;
}

}  // namespace detail

/// Scans one preprocessed body for spoofing cues. Marker tokens are skipped;
/// positions index the remaining tokens.
inline CueReport detect_cues(const std::string& clean_body, const CueLexicons& lex) {
    static const std::unordered_set<std::string> tags = {
        std::string(kEntityTag), std::string(kEmailTag), std::string(kLinkTag)};
    CueReport report;
    const std::vector<std::string> tokens = body_tokens(clean_body);
    report.word_count = static_cast<int>(tokens.size());
    for (int pos = 0; pos < static_cast<int>(tokens.size()); ++pos) {
        const std::string& token = tokens[static_cast<std::size_t>(pos)];
        auto hit = [&](CueCategory category) {
            report.matches[category].push_back({token, pos});
        };
        if (token == kLinkTag) hit(CueCategory::link);
        if (lex.organizations.count(token)) hit(CueCategory::organization);
        if (lex.action_verbs.count(token)) hit(CueCategory::action_verb);
        if (lex.urgency_adverbs.count(token)) hit(CueCategory::urgency_adverb);

        if (tags.count(token) || !detail::has_alpha(token)) continue;
        const bool in_dictionary = lex.english_dictionary.count(token) > 0;
        const bool in_any_lexicon = lex.organizations.count(token) ||
                                    lex.action_verbs.count(token) ||
                                    lex.urgency_adverbs.count(token);
        if (!in_dictionary && !in_any_lexicon) {
            // Misspelled-organization takes precedence over the catch-all
            // non-English bucket.
            if (detail::near_organization(token, lex)) {
                hit(CueCategory::misspelled_organization);
            } else {
                hit(CueCategory::non_english);
            }
        }
    }
    return report;
}

struct CueTotals {
    std::size_t total = 0;
    double mean_density = 0.0;
};

/// Sums match counts and averages per-email densities across reports.
inline std::map<CueCategory, CueTotals> cue_summary(const std::vector<CueReport>& reports) {
    if (reports.empty()) throw std::invalid_argument("cue_summary: empty report list");
    std::map<CueCategory, CueTotals> summary;
    for (CueCategory category : all_cue_categories()) {
        CueTotals totals;
        for (const CueReport& report : reports) {
            auto it = report.matches.find(category);
            if (it != report.matches.end()) totals.total += it->second.size();
            totals.mean_density += report.density(category);
        }
        totals.mean_density /= static_cast<double>(reports.size());
        summary[category] = totals;
    }
    return summary;
}

}  // namespace mailgen
