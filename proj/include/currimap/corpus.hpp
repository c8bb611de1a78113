#pragma once

#include <filesystem>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "currimap/errors.hpp"

namespace currimap {

// A course as it appears in an input file: ordered modules, raw topic labels.
struct RawCourse {
    std::string id;
    std::optional<std::string> source;
    std::vector<std::vector<std::string>> modules;

    bool operator==(const RawCourse&) const = default;
};

struct RawCorpus {
    std::vector<RawCourse> courses;

    bool operator==(const RawCorpus&) const = default;
};

// Ordered whole-label rewrites. Patterns are folded on construction;
// replacements must already be canonical. A rewrite applies at most once
// (no transitive chaining).
class NormalizationRules {
public:
    NormalizationRules() = default;

    static NormalizationRules from_pairs(
        const std::vector<std::pair<std::string, std::string>>& pairs);

    const std::vector<std::pair<std::string, std::string>>& rewrites() const {
        return rewrites_;
    }

    // Exact whole-label match against a folded label.
    std::optional<std::string> lookup(const std::string& folded_label) const;

    bool operator==(const NormalizationRules& other) const {
        return rewrites_ == other.rewrites_;
    }

private:
    std::vector<std::pair<std::string, std::string>> rewrites_;
    std::unordered_map<std::string, std::size_t> index_;
};

// A course after normalization: each module is a set of canonical topics.
struct Course {
    std::string id;
    std::optional<std::string> source;
    std::vector<std::set<std::string>> modules;

    bool operator==(const Course&) const = default;
};

struct Corpus {
    std::vector<Course> courses;

    bool operator==(const Corpus&) const = default;

    std::size_t module_count() const;
    std::set<std::string> topics() const;
};

// Canonicalizes one raw topic label: lowercase, diacritics stripped via
// decomposition, dash punctuation mapped to ASCII hyphen, whitespace trimmed
// and collapsed. Idempotent. Throws validation_error if the result is empty.
std::string fold_label(std::string_view raw);

// Whole-label rewrite; returns the label unchanged when no pattern matches.
std::string apply_rewrites(const std::string& label, const NormalizationRules& rules);

// Fold + rewrite + dedup every label; validates all corpus invariants.
Corpus normalize(const RawCorpus& raw, const NormalizationRules& rules);

RawCorpus parse_corpus_json(std::string_view text);
RawCorpus parse_corpus_tsv(std::string_view text);
NormalizationRules parse_rules_csv(std::string_view text);

// Format chosen by file extension: .json or .tsv.
Corpus load_corpus(const std::filesystem::path& path, const NormalizationRules& rules);
NormalizationRules load_rules(const std::filesystem::path& path);

std::string corpus_to_json(const Corpus& corpus);
void save_corpus(const Corpus& corpus, const std::filesystem::path& path);

}  // namespace currimap
