#include "currimap/corpus.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <map>
#include <sstream>

#include <json.hpp>

#include "strutil.hpp"

namespace currimap {

namespace {

using detail::append_utf8;
using detail::decode_utf8;

bool is_space_cp(char32_t cp) {
    switch (cp) {
        case U' ':
        case U'\t':
        case U'\n':
        case U'\r':
        case U'\f':
        case U'\v':
        case 0x00a0:  // no-break space
        case 0x1680:
        case 0x2028:
        case 0x2029:
        case 0x202f:
        case 0x205f:
        case 0x3000:
            return true;
        default:
            return cp >= 0x2000 && cp <= 0x200a;
    }
}

bool is_dash_cp(char32_t cp) {
    // hyphen .. horizontal bar, plus the minus sign
    return (cp >= 0x2010 && cp <= 0x2015) || cp == 0x2212;
}

bool is_combining_mark(char32_t cp) {
    return (cp >= 0x0300 && cp <= 0x036f) || (cp >= 0x1ab0 && cp <= 0x1aff) ||
           (cp >= 0x1dc0 && cp <= 0x1dff) || (cp >= 0x20d0 && cp <= 0x20ff) ||
           (cp >= 0xfe20 && cp <= 0xfe2f);
}

// ASCII replacement for Latin letters with diacritics or ligatures, lowercased.
// Returns nullptr when the codepoint needs no such mapping.
const char* ascii_fold(char32_t cp) {
    if (cp == 0x00df) return "ss";  // sharp s
    if (cp == 0x00ff) return "y";   // y with diaeresis (no uppercase mirror)
    // Latin-1 Supplement; the lowercase block mirrors the uppercase one
    if (cp >= 0x00c0 && cp <= 0x00fe) {
        if (cp >= 0x00e0) cp -= 0x20;
        switch (cp) {
            case 0x00c6: return "ae";
            case 0x00c7: return "c";
            case 0x00d0: return "d";
            case 0x00d1: return "n";
            case 0x00d7: return nullptr;  // multiplication/division signs
            case 0x00de: return "th";
            default: break;
        }
        if (cp <= 0x00c5) return "a";
        if (cp >= 0x00c8 && cp <= 0x00cb) return "e";
        if (cp >= 0x00cc && cp <= 0x00cf) return "i";
        if ((cp >= 0x00d2 && cp <= 0x00d6) || cp == 0x00d8) return "o";
        if (cp >= 0x00d9 && cp <= 0x00dc) return "u";
        if (cp == 0x00dd) return "y";
        return nullptr;
    }
    // Latin Extended-A
    if (cp >= 0x0100 && cp <= 0x017f) {
        if (cp <= 0x0105) return "a";
        if (cp <= 0x010d) return "c";
        if (cp <= 0x0111) return "d";
        if (cp <= 0x011b) return "e";
        if (cp <= 0x0123) return "g";
        if (cp <= 0x0127) return "h";
        if (cp <= 0x0131) return "i";
        if (cp <= 0x0133) return "ij";
        if (cp <= 0x0135) return "j";
        if (cp <= 0x0138) return "k";
        if (cp <= 0x0142) return "l";
        if (cp <= 0x014b) return "n";
        if (cp <= 0x0151) return "o";
        if (cp <= 0x0153) return "oe";
        if (cp <= 0x0159) return "r";
        if (cp <= 0x0161) return "s";
        if (cp <= 0x0167) return "t";
        if (cp <= 0x0173) return "u";
        if (cp <= 0x0175) return "w";
        if (cp <= 0x0178) return "y";
        if (cp <= 0x017e) return "z";
        return "s";  // long s
    }
    return nullptr;
}

}  // namespace

std::string fold_label(std::string_view raw) {
    std::string out;
    out.reserve(raw.size());
    bool pending_space = false;
    const auto put = [&](char c) {
        if (pending_space) {
            if (!out.empty()) out.push_back(' ');
            pending_space = false;
        }
        out.push_back(c);
    };

    std::size_t pos = 0;
    while (pos < raw.size()) {
        const char32_t cp = decode_utf8(raw, pos);
        if (is_space_cp(cp)) {
            pending_space = true;
            continue;
        }
        if (is_combining_mark(cp)) {
            continue;
        }
        if (is_dash_cp(cp)) {
            put('-');
            continue;
        }
        if (cp < 0x80) {
            put(cp >= 'A' && cp <= 'Z' ? static_cast<char>(cp + 32)
                                       : static_cast<char>(cp));
            continue;
        }
        if (const char* mapped = ascii_fold(cp)) {
            for (const char* p = mapped; *p; ++p) put(*p);
            continue;
        }
        std::string bytes;
        append_utf8(bytes, cp);
        for (const char c : bytes) put(c);
    }
    if (out.empty()) {
        throw validation_error("label is empty after folding");
    }
    return out;
}

NormalizationRules NormalizationRules::from_pairs(
    const std::vector<std::pair<std::string, std::string>>& pairs) {
    NormalizationRules rules;
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        const auto rule_pos = [&] { return "rule " + std::to_string(i + 1); };
        std::string pattern;
        try {
            pattern = fold_label(pairs[i].first);
        } catch (const validation_error&) {
            throw validation_error(rule_pos() + ": pattern folds to empty");
        }
        const std::string& replacement = pairs[i].second;
        try {
            if (fold_label(replacement) != replacement) {
                throw validation_error(rule_pos() + ": replacement '" + replacement +
                                       "' is not canonical");
            }
        } catch (const validation_error&) {
            throw validation_error(rule_pos() + ": replacement '" + replacement +
                                   "' is not canonical");
        }
        if (!rules.index_.emplace(pattern, rules.rewrites_.size()).second) {
            throw validation_error(rule_pos() + ": duplicate pattern '" + pattern + "'");
        }
        rules.rewrites_.emplace_back(pattern, replacement);
    }
    return rules;
}

std::optional<std::string> NormalizationRules::lookup(const std::string& folded_label) const {
    const auto it = index_.find(folded_label);
    if (it == index_.end()) return std::nullopt;
    return rewrites_[it->second].second;
}

std::string apply_rewrites(const std::string& label, const NormalizationRules& rules) {
    if (auto replacement = rules.lookup(label)) {
        return *replacement;
    }
    return label;
}

std::size_t Corpus::module_count() const {
    std::size_t n = 0;
    for (const auto& course : courses) n += course.modules.size();
    return n;
}

std::set<std::string> Corpus::topics() const {
    std::set<std::string> all;
    for (const auto& course : courses) {
        for (const auto& module : course.modules) {
            all.insert(module.begin(), module.end());
        }
    }
    return all;
}

Corpus normalize(const RawCorpus& raw, const NormalizationRules& rules) {
    if (raw.courses.empty()) {
        throw validation_error("corpus has no courses");
    }
    Corpus corpus;
    std::set<std::string> seen_ids;
    for (const auto& raw_course : raw.courses) {
        if (raw_course.id.empty()) {
            throw validation_error("course with empty id");
        }
        if (!seen_ids.insert(raw_course.id).second) {
            throw validation_error("duplicate course id '" + raw_course.id + "'");
        }
        if (raw_course.modules.empty()) {
            throw validation_error("course '" + raw_course.id + "' has no modules");
        }
        Course course;
        course.id = raw_course.id;
        course.source = raw_course.source;
        for (std::size_t m = 0; m < raw_course.modules.size(); ++m) {
            const auto where = [&] {
                return "course '" + raw_course.id + "' module " + std::to_string(m);
            };
            const auto& labels = raw_course.modules[m];
            if (labels.empty()) {
                throw validation_error(where() + ": empty module");
            }
            std::set<std::string> topics;
            for (const auto& label : labels) {
                std::string folded;
                try {
                    folded = fold_label(label);
                } catch (const validation_error&) {
                    throw validation_error(where() + ": label '" + label +
                                           "' folds to empty");
                }
                topics.insert(apply_rewrites(folded, rules));
            }
            course.modules.push_back(std::move(topics));
        }
        corpus.courses.push_back(std::move(course));
    }
    return corpus;
}

RawCorpus parse_corpus_json(std::string_view text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw parse_error(std::string("invalid corpus JSON: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("courses") || !doc["courses"].is_array()) {
        throw parse_error("corpus JSON must be an object with a 'courses' array");
    }
    RawCorpus raw;
    std::size_t ci = 0;
    for (const auto& jc : doc["courses"]) {
        const std::string where = "courses[" + std::to_string(ci) + "]";
        if (!jc.is_object()) {
            throw parse_error(where + ": expected an object");
        }
        RawCourse course;
        if (!jc.contains("id") || !jc["id"].is_string()) {
            throw parse_error(where + ": missing string 'id'");
        }
        course.id = jc["id"].get<std::string>();
        if (jc.contains("source") && !jc["source"].is_null()) {
            if (!jc["source"].is_string()) {
                throw parse_error(where + ": 'source' must be a string or null");
            }
            course.source = jc["source"].get<std::string>();
        }
        if (!jc.contains("modules") || !jc["modules"].is_array()) {
            throw parse_error(where + ": missing 'modules' array");
        }
        std::size_t mi = 0;
        for (const auto& jm : jc["modules"]) {
            if (!jm.is_array()) {
                throw parse_error(where + ".modules[" + std::to_string(mi) +
                                  "]: expected an array of strings");
            }
            std::vector<std::string> labels;
            for (const auto& jl : jm) {
                if (!jl.is_string()) {
                    throw parse_error(where + ".modules[" + std::to_string(mi) +
                                      "]: topics must be strings");
                }
                labels.push_back(jl.get<std::string>());
            }
            course.modules.push_back(std::move(labels));
            ++mi;
        }
        raw.courses.push_back(std::move(course));
        ++ci;
    }
    return raw;
}

RawCorpus parse_corpus_tsv(std::string_view text) {
    RawCorpus raw;
    std::map<std::string, std::size_t> course_index;
    std::map<std::string, long long> last_module_index;

    std::size_t line_no = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
        const std::size_t nl = text.find('\n', start);
        std::string_view line = nl == std::string_view::npos
                                    ? text.substr(start)
                                    : text.substr(start, nl - start);
        start = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        if (line.empty()) continue;

        std::vector<std::string> fields;
        std::size_t fs = 0;
        while (true) {
            const std::size_t tab = line.find('\t', fs);
            fields.emplace_back(line.substr(fs, tab == std::string_view::npos
                                                    ? std::string_view::npos
                                                    : tab - fs));
            if (tab == std::string_view::npos) break;
            fs = tab + 1;
        }
        const auto where = [&] { return "line " + std::to_string(line_no); };
        if (fields.size() < 2) {
            throw parse_error(where() + ": expected course_id<TAB>module_index<TAB>topics...");
        }
        const std::string& id = fields[0];
        if (id.empty()) {
            throw parse_error(where() + ": empty course id");
        }
        long long index = 0;
        {
            const auto& f = fields[1];
            const auto res = std::from_chars(f.data(), f.data() + f.size(), index);
            if (res.ec != std::errc() || res.ptr != f.data() + f.size()) {
                throw parse_error(where() + ": module_index '" + f + "' is not an integer");
            }
        }
        auto [it, inserted] = course_index.emplace(id, raw.courses.size());
        if (inserted) {
            raw.courses.push_back(RawCourse{id, std::nullopt, {}});
            last_module_index[id] = index - 1;  // force a fresh module below
        }
        RawCourse& course = raw.courses[it->second];
        const long long last = last_module_index[id];
        if (index < last) {
            throw parse_error(where() + ": module_index decreased for course '" + id + "'");
        }
        if (index > last || course.modules.empty()) {
            course.modules.emplace_back();
            last_module_index[id] = index;
        }
        course.modules.back().insert(course.modules.back().end(), fields.begin() + 2,
                                     fields.end());
    }
    return raw;
}

NormalizationRules parse_rules_csv(std::string_view text) {
    // Strip a UTF-8 BOM if present.
    if (text.size() >= 3 && text.substr(0, 3) == "\xef\xbb\xbf") {
        text.remove_prefix(3);
    }
    const auto records = detail::parse_csv(text);
    if (records.empty()) {
        throw parse_error("rules CSV is empty; expected header 'pattern,replacement'");
    }
    if (records[0] != std::vector<std::string>{"pattern", "replacement"}) {
        throw parse_error("rules CSV must start with header 'pattern,replacement'");
    }
    std::vector<std::pair<std::string, std::string>> pairs;
    for (std::size_t r = 1; r < records.size(); ++r) {
        const auto& rec = records[r];
        if (rec.size() == 1 && rec[0].empty()) continue;  // blank line
        if (rec.size() != 2) {
            throw parse_error("rules CSV record " + std::to_string(r + 1) +
                              ": expected 2 fields, got " + std::to_string(rec.size()));
        }
        pairs.emplace_back(rec[0], rec[1]);
    }
    return NormalizationRules::from_pairs(pairs);
}

namespace {

std::string lower_extension(const std::filesystem::path& path) {
    std::string ext = path.extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return ext;
}

}  // namespace

Corpus load_corpus(const std::filesystem::path& path, const NormalizationRules& rules) {
    const std::string text = detail::read_file(path);
    const std::string ext = lower_extension(path);
    RawCorpus raw;
    if (ext == ".json") {
        raw = parse_corpus_json(text);
    } else if (ext == ".tsv") {
        raw = parse_corpus_tsv(text);
    } else {
        throw validation_error("unsupported corpus format '" + ext +
                               "' for " + path.string() + " (expected .json or .tsv)");
    }
    try {
        return normalize(raw, rules);
    } catch (const validation_error& e) {
        throw validation_error(path.string() + ": " + e.what());
    }
}

NormalizationRules load_rules(const std::filesystem::path& path) {
    try {
        return parse_rules_csv(detail::read_file(path));
    } catch (const validation_error& e) {
        throw validation_error(path.string() + ": " + e.what());
    } catch (const parse_error& e) {
        throw parse_error(path.string() + ": " + e.what());
    }
}

std::string corpus_to_json(const Corpus& corpus) {
    nlohmann::ordered_json doc;
    doc["courses"] = nlohmann::ordered_json::array();
    for (const auto& course : corpus.courses) {
        nlohmann::ordered_json jc;
        jc["id"] = course.id;
        jc["source"] = course.source ? nlohmann::ordered_json(*course.source)
                                     : nlohmann::ordered_json(nullptr);
        jc["modules"] = nlohmann::ordered_json::array();
        for (const auto& module : course.modules) {
            jc["modules"].push_back(std::vector<std::string>(module.begin(), module.end()));
        }
        doc["courses"].push_back(std::move(jc));
    }
    return doc.dump(2) + "\n";
}

void save_corpus(const Corpus& corpus, const std::filesystem::path& path) {
    detail::write_file(path, corpus_to_json(corpus));
}

}  // namespace currimap
