#include "curate/cleaning.hpp"

#include <regex>
#include <vector>

#include "curate/jsonl.hpp"
#include "curate/unicode.hpp"

namespace curate {

void CleaningReport::merge(const CleaningReport& other) {
    for (const auto& [k, v] : other.rules_fired) rules_fired[k] += v;
    chars_removed += other.chars_removed;
    chars_inserted += other.chars_inserted;
    latex_fixes += other.latex_fixes;
}

namespace {

const std::regex kUrlRe(R"(https?://\S+)");
const std::regex kDoiRe(R"(\b10\.\d{4,9}/\S+)");
const std::regex kCitationRe(R"(\[\d+(,\s*\d+)*\])");
const std::regex kHyphenBreakRe(R"(([A-Za-z])-\n([A-Za-z]))");
const std::regex kBeginEndRe(R"(\\(begin|end)\{([^}]*)\})");

std::string remove_all(const std::string& text, const std::regex& re, const char* rule,
                       CleaningReport& report) {
    std::string out;
    out.reserve(text.size());
    auto begin = std::sregex_iterator(text.begin(), text.end(), re);
    auto end = std::sregex_iterator();
    size_t pos = 0;
    for (auto it = begin; it != end; ++it) {
        out.append(text, pos, static_cast<size_t>(it->position()) - pos);
        pos = static_cast<size_t>(it->position() + it->length());
        ++report.rules_fired[rule];
    }
    out.append(text, pos, std::string::npos);
    return out;
}

std::string rejoin_hyphenation(const std::string& text, CleaningReport& report) {
    std::string out = text;
    // Overlapping breaks ("a-\nb-\nc") need repeated passes.
    for (;;) {
        std::string next;
        next.reserve(out.size());
        auto begin = std::sregex_iterator(out.begin(), out.end(), kHyphenBreakRe);
        auto end = std::sregex_iterator();
        size_t pos = 0;
        size_t fired = 0;
        for (auto it = begin; it != end; ++it) {
            next.append(out, pos, static_cast<size_t>(it->position()) - pos);
            next += it->str(1);
            next += it->str(2);
            pos = static_cast<size_t>(it->position() + it->length());
            ++fired;
        }
        next.append(out, pos, std::string::npos);
        report.rules_fired["hyphenation"] += fired;
        out = std::move(next);
        if (fired == 0) break;
    }
    return out;
}

// A whitespace run is a paragraph break when it contains two or more newlines.
std::string collapse_whitespace(const std::string& text) {
    std::string out;
    out.reserve(text.size());
    size_t i = 0;
    while (i < text.size()) {
        unsigned char c = text[i];
        if (std::isspace(c)) {
            size_t j = i;
            int newlines = 0;
            while (j < text.size() && std::isspace(static_cast<unsigned char>(text[j]))) {
                if (text[j] == '\n') ++newlines;
                ++j;
            }
            if (!out.empty() && j < text.size()) out += newlines >= 2 ? "\n\n" : " ";
            i = j;
        } else {
            out.push_back(text[i++]);
        }
    }
    return out;
}

std::pair<std::string, uint64_t> repair_latex_paragraph(const std::string& para) {
    uint64_t fixes = 0;
    std::string out = para;

    // Unclosed environments: close innermost-first.
    std::vector<std::string> open_envs;
    for (auto it = std::sregex_iterator(para.begin(), para.end(), kBeginEndRe);
         it != std::sregex_iterator(); ++it) {
        if (it->str(1) == "begin") {
            open_envs.push_back(it->str(2));
        } else if (!open_envs.empty() && open_envs.back() == it->str(2)) {
            open_envs.pop_back();
        }
    }
    if (count_unescaped_dollars(para) % 2 != 0) {
        out += '$';
        ++fixes;
    }
    for (auto it = open_envs.rbegin(); it != open_envs.rend(); ++it) {
        out += "\\end{" + *it + "}";
        ++fixes;
    }
    return {out, fixes};
}

}  // namespace

size_t count_unescaped_dollars(std::string_view text) {
    size_t count = 0;
    for (size_t i = 0; i < text.size(); ++i) {
        if (text[i] == '$' && (i == 0 || text[i - 1] != '\\')) ++count;
    }
    return count;
}

std::pair<std::string, uint64_t> repair_latex(const std::string& text) {
    std::string out;
    uint64_t fixes = 0;
    size_t pos = 0;
    while (pos <= text.size()) {
        // Paragraph ends at a whitespace run containing >= 2 newlines.
        size_t brk = std::string::npos;
        size_t brk_end = 0;
        for (size_t i = pos; i < text.size(); ++i) {
            if (!std::isspace(static_cast<unsigned char>(text[i]))) continue;
            size_t j = i;
            int newlines = 0;
            while (j < text.size() && std::isspace(static_cast<unsigned char>(text[j]))) {
                if (text[j] == '\n') ++newlines;
                ++j;
            }
            if (newlines >= 2) {
                brk = i;
                brk_end = j;
                break;
            }
            i = j - 1;
        }
        std::string para = text.substr(pos, (brk == std::string::npos ? text.size() : brk) - pos);
        auto [repaired, n] = repair_latex_paragraph(para);
        out += repaired;
        fixes += n;
        if (brk == std::string::npos) break;
        out += text.substr(brk, brk_end - brk);
        pos = brk_end;
    }
    return {out, fixes};
}

std::pair<Document, CleaningReport> clean_document(const Document& doc) {
    CleaningReport report;

    std::string t = nfc(doc.text);
    size_t len_after_nfc = t.size();

    t = remove_all(t, kUrlRe, "url", report);
    t = remove_all(t, kDoiRe, "doi", report);
    t = remove_all(t, kCitationRe, "citation", report);
    t = rejoin_hyphenation(t, report);

    auto [repaired, fixes] = repair_latex(t);
    size_t before_repair = t.size();
    t = std::move(repaired);
    report.latex_fixes = fixes;
    report.rules_fired["latex_repair"] += fixes;
    report.chars_inserted = t.size() - before_repair;

    t = collapse_whitespace(t);

    report.chars_removed = static_cast<int64_t>(len_after_nfc) - static_cast<int64_t>(t.size()) +
                           static_cast<int64_t>(report.chars_inserted);

    Document out = doc;
    out.text = std::move(t);
    return {out, report};
}

RunManifest clean_stage(const std::string& input_path, const std::string& output_path,
                        size_t min_chars) {
    RunManifest m;
    m.stage = "clean";
    DocumentReader reader(input_path);
    DocumentWriter writer(output_path);
    while (auto doc = reader.next()) {
        ++m.docs_in;
        auto [cleaned, report] = clean_document(*doc);
        if (cleaned.text.empty()) {
            m.drop("empty_after_clean");
        } else if (cleaned.text.size() < min_chars) {
            m.drop("too_short");
        } else {
            writer.write(cleaned);
            ++m.docs_out;
        }
    }
    writer.close();
    return m;
}

}  // namespace curate
