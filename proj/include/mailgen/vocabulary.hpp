#pragma once

#include <algorithm>
#include <array>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "mailgen/corpus.hpp"
#include "mailgen/text.hpp"

namespace mailgen {

/// Bidirectional token/index map over the one-hot index space. The six
/// reserved tokens always occupy indices 0..5.
struct Vocabulary {
    enum Special : int { kSot = 0, kEot = 1, kEnt = 2, kEmailId = 3, kLink = 4, kUnk = 5 };

    std::vector<std::string> index_to_token;
    std::unordered_map<std::string, int> token_to_index;

    static const std::array<std::string, 6>& special_tokens() {
        static const std::array<std::string, 6> specials = {
            std::string(kStartTag), std::string(kEndTag),   std::string(kEntityTag),
            std::string(kEmailTag), std::string(kLinkTag), std::string(kUnknownTag)};
        return specials;
    }

    int size() const { return static_cast<int>(index_to_token.size()); }

    /// Token index, falling back to UNK.
    int encode(const std::string& token) const {
        auto it = token_to_index.find(token);
        return it == token_to_index.end() ? kUnk : it->second;
    }

    std::vector<int> encode_all(const std::vector<std::string>& tokens) const {
        std::vector<int> ids;
        ids.reserve(tokens.size());
        for (const std::string& t : tokens) ids.push_back(encode(t));
        return ids;
    }

    const std::string& decode(int index) const {
        if (index < 0 || index >= size()) {
            throw std::invalid_argument("vocabulary index out of range: " + std::to_string(index));
        }
        return index_to_token[static_cast<std::size_t>(index)];
    }

    void push(const std::string& token) {
        token_to_index.emplace(token, size());
        index_to_token.push_back(token);
    }

    static Vocabulary from_tokens(const std::vector<std::string>& tokens) {
        Vocabulary vocab;
        for (const std::string& s : special_tokens()) vocab.push(s);
        for (const std::string& t : tokens) {
            if (!vocab.token_to_index.count(t)) vocab.push(t);
        }
        return vocab;
    }
};

/// Builds a vocabulary over the clean bodies of a preprocessed corpus.
/// Tokens with frequency >= min_count are kept, ranked by descending
/// frequency with lexicographic tie-breaks, truncated so the total size
/// (specials included) does not exceed max_size. max_size = 0 disables
/// truncation. Everything else encodes to UNK.
inline Vocabulary build_vocabulary(const Corpus& corpus, int min_count = 1, int max_size = 0) {
    if (corpus.emails.empty()) throw std::invalid_argument("build_vocabulary: empty corpus");
    std::unordered_map<std::string, std::size_t> freq;
    for (const Email& email : corpus.emails) {
        for (const std::string& token : split_whitespace(email.clean_body)) ++freq[token];
    }
    Vocabulary vocab;
    for (const std::string& s : Vocabulary::special_tokens()) vocab.push(s);
    std::vector<std::pair<std::string, std::size_t>> ranked;
    ranked.reserve(freq.size());
    for (auto& [token, count] : freq) {
        if (vocab.token_to_index.count(token)) continue;  // specials stay pinned
        if (count >= static_cast<std::size_t>(std::max(min_count, 0))) ranked.emplace_back(token, count);
    }
    std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second > b.second;
        return a.first < b.first;
    });
    const std::size_t capacity = max_size > 0 && static_cast<std::size_t>(max_size) >
                                                      Vocabulary::special_tokens().size()
                                     ? static_cast<std::size_t>(max_size) -
                                           Vocabulary::special_tokens().size()
                                     : (max_size > 0 ? 0 : ranked.size());
    for (std::size_t i = 0; i < ranked.size() && i < capacity; ++i) vocab.push(ranked[i].first);
    return vocab;
}

}  // namespace mailgen
