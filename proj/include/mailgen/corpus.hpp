#pragma once

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <vector>

#include <nlohmann/json.hpp>

#include "mailgen/rng.hpp"
#include "mailgen/text.hpp"

namespace mailgen {

/// One email body in raw and cleaned form.
struct Email {
    std::string id;
    std::string raw_body;
    std::string clean_body;                           // tagged, lowercased, marker-wrapped
    std::vector<std::vector<std::string>> sentences;  // token lists, markers excluded
    int word_count = 0;                               // tokens excluding markers
    int sentence_count = 0;
};

struct Corpus {
    std::vector<Email> emails;
    std::string source_label;
};

/// Table-2 style aggregate statistics over a preprocessed corpus.
struct CorpusStats {
    std::size_t num_emails = 0;
    std::size_t total_words = 0;
    double avg_words = 0.0;
    std::size_t total_vocab = 0;  // distinct tokens corpus-wide
    double avg_vocab = 0.0;       // mean per-email distinct tokens
    double avg_sentence_length = 0.0;
    std::size_t total_sentences = 0;
    double avg_sentences = 0.0;
};

enum class CorpusFormat { jsonl, directory };

/// Reads a corpus. jsonl mode expects one {"id": ..., "body": ...} object per
/// line; directory mode reads each regular file as one email (id = filename,
/// lexicographic order). Clean fields are left empty.
inline Corpus load_corpus(const std::filesystem::path& path, CorpusFormat format) {
    if (!std::filesystem::exists(path)) {
        throw std::runtime_error("corpus path does not exist: " + path.string());
    }
    Corpus corpus;
    corpus.source_label = path.string();
    std::unordered_set<std::string> seen_ids;
    auto add = [&](std::string id, std::string body, const std::string& where) {
        if (!seen_ids.insert(id).second) {
            throw std::runtime_error("duplicate email id '" + id + "' (" + where + ")");
        }
        Email email;
        email.id = std::move(id);
        email.raw_body = std::move(body);
        corpus.emails.push_back(std::move(email));
    };

    if (format == CorpusFormat::jsonl) {
        std::ifstream in(path);
        if (!in) throw std::runtime_error("cannot open corpus file: " + path.string());
        std::string line;
        std::size_t line_no = 0;
        while (std::getline(in, line)) {
            ++line_no;
            if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
            nlohmann::json record;
            try {
                record = nlohmann::json::parse(line);
            } catch (const nlohmann::json::exception& e) {
                throw std::runtime_error(path.string() + " line " + std::to_string(line_no) +
                                         ": invalid json (" + e.what() + ")");
            }
            if (!record.contains("id") || !record["id"].is_string()) {
                throw std::runtime_error(path.string() + " line " + std::to_string(line_no) +
                                         ": missing string field \"id\"");
            }
            if (!record.contains("body") || !record["body"].is_string()) {
                throw std::runtime_error(path.string() + " line " + std::to_string(line_no) +
                                         ": missing string field \"body\"");
            }
            add(record["id"].get<std::string>(), record["body"].get<std::string>(),
                "line " + std::to_string(line_no));
        }
    } else {
        if (!std::filesystem::is_directory(path)) {
            throw std::runtime_error("not a directory: " + path.string());
        }
        std::vector<std::filesystem::path> files;
        for (const auto& entry : std::filesystem::directory_iterator(path)) {
            if (entry.is_regular_file()) files.push_back(entry.path());
        }
        std::sort(files.begin(), files.end());
        for (const auto& file : files) {
            std::ifstream in(file, std::ios::binary);
            if (!in) throw std::runtime_error("cannot open email file: " + file.string());
            std::string body((std::istreambuf_iterator<char>(in)),
                             std::istreambuf_iterator<char>());
            add(file.filename().string(), std::move(body), file.string());
        }
    }
    return corpus;
}

/// Fills clean_body, sentences, and counts for one email.
inline void preprocess_in_place(Email& email, const EntityRecognizer& recognizer) {
    email.clean_body = preprocess_email(email.raw_body, recognizer);
    const std::vector<std::string> tokens = body_tokens(email.clean_body);
    email.word_count = static_cast<int>(tokens.size());
    email.sentences = split_sentences(tokens);
    email.sentence_count = static_cast<int>(email.sentences.size());
}

inline Corpus preprocess_corpus(Corpus corpus, const EntityRecognizer& recognizer) {
    for (Email& email : corpus.emails) preprocess_in_place(email, recognizer);
    return corpus;
}

inline Corpus preprocess_corpus(Corpus corpus) {
    return preprocess_corpus(std::move(corpus), DefaultEntityRecognizer());
}

/// Keeps emails with at least min_words words and min_sentences sentences.
inline Corpus filter_corpus(const Corpus& corpus, int min_words = 10, int min_sentences = 1) {
    Corpus out;
    out.source_label = corpus.source_label;
    for (const Email& email : corpus.emails) {
        if (email.word_count >= min_words && email.sentence_count >= min_sentences) {
            out.emails.push_back(email);
        }
    }
    return out;
}

/// Aggregate statistics over clean bodies (markers excluded everywhere).
inline CorpusStats corpus_stats(const Corpus& corpus) {
    if (corpus.emails.empty()) throw std::invalid_argument("corpus_stats: empty corpus");
    CorpusStats stats;
    stats.num_emails = corpus.emails.size();
    std::unordered_set<std::string> global_vocab;
    std::size_t vocab_sum = 0;
    for (const Email& email : corpus.emails) {
        if (email.clean_body.empty()) {
            throw std::runtime_error("corpus_stats: email '" + email.id + "' is not preprocessed");
        }
        const std::vector<std::string> tokens = body_tokens(email.clean_body);
        stats.total_words += tokens.size();
        stats.total_sentences += email.sentences.size();
        std::unordered_set<std::string> local(tokens.begin(), tokens.end());
        vocab_sum += local.size();
        global_vocab.insert(local.begin(), local.end());
    }
    stats.total_vocab = global_vocab.size();
    const double n = static_cast<double>(stats.num_emails);
    stats.avg_words = static_cast<double>(stats.total_words) / n;
    stats.avg_vocab = static_cast<double>(vocab_sum) / n;
    stats.avg_sentences = static_cast<double>(stats.total_sentences) / n;
    stats.avg_sentence_length =
        stats.total_sentences == 0
            ? 0.0
            : static_cast<double>(stats.total_words) / static_cast<double>(stats.total_sentences);
    return stats;
}

/// Deterministic train/validation split. Validation gets round(fraction * n)
/// emails; both halves preserve the input order.
inline std::pair<Corpus, Corpus> split_corpus(const Corpus& corpus, double validation_fraction,
                                              std::uint64_t seed) {
    if (!(validation_fraction > 0.0 && validation_fraction < 1.0)) {
        throw std::invalid_argument("split_corpus: validation_fraction must be in (0, 1)");
    }
    const std::size_t n = corpus.emails.size();
    const std::size_t k = static_cast<std::size_t>(
        std::llround(validation_fraction * static_cast<double>(n)));
    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    Rng rng(seed);
    shuffle(order, rng);
    std::vector<bool> in_validation(n, false);
    for (std::size_t i = 0; i < k && i < n; ++i) in_validation[order[i]] = true;
    Corpus train, validation;
    train.source_label = corpus.source_label + "/train";
    validation.source_label = corpus.source_label + "/validation";
    for (std::size_t i = 0; i < n; ++i) {
        (in_validation[i] ? validation : train).emails.push_back(corpus.emails[i]);
    }
    return {std::move(train), std::move(validation)};
}

/// Writes a corpus back out as jsonl, using clean bodies when present.
inline void save_corpus_jsonl(const Corpus& corpus, const std::filesystem::path& path,
                              bool prefer_clean = true) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write corpus file: " + path.string());
    for (const Email& email : corpus.emails) {
        nlohmann::json record;
        record["id"] = email.id;
        record["body"] =
            (prefer_clean && !email.clean_body.empty()) ? email.clean_body : email.raw_body;
        out << record.dump() << "\n";
    }
}

}  // namespace mailgen
