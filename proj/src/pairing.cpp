#include "curate/pairing.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>

#include <httplib.h>
#include <json.hpp>

#include "curate/error.hpp"
#include "curate/jsonl.hpp"
#include "http_client.hpp"

namespace curate {

namespace {

class WhitespaceCounter final : public TokenCounter {
public:
    size_t count(const std::string& text) override {
        size_t n = 0;
        bool in_token = false;
        for (unsigned char c : text) {
            bool space = std::isspace(c);
            if (!space && !in_token) ++n;
            in_token = !space;
        }
        return n;
    }
    std::string name() const override { return "whitespace"; }
};

class HttpTokenCounter final : public TokenCounter {
public:
    explicit HttpTokenCounter(const std::string& endpoint) : endpoint_(endpoint) {
        auto [base, path] = detail::split_url(endpoint);
        base_ = base;
        path_ = path;
    }
    size_t count(const std::string& text) override {
        httplib::Client client(base_);
        nlohmann::json req{{"texts", nlohmann::json::array({text})}};
        auto res = client.Post(path_, req.dump(), "application/json");
        if (!res || res->status != 200) {
            throw StageError("tokenizer request to " + endpoint_ + " failed" +
                             (res ? " with status " + std::to_string(res->status) : ""));
        }
        nlohmann::json j = nlohmann::json::parse(res->body, nullptr, false);
        if (j.is_discarded() || !j.contains("counts") || !j["counts"].is_array() ||
            j["counts"].size() != 1) {
            throw StageError("tokenizer service returned malformed response");
        }
        return j["counts"][0].get<size_t>();
    }
    std::string name() const override { return "http:" + endpoint_; }

private:
    std::string endpoint_, base_, path_;
};

bool is_blank_break(const std::string& text, size_t i, size_t& end) {
    if (!std::isspace(static_cast<unsigned char>(text[i]))) return false;
    size_t j = i;
    int newlines = 0;
    while (j < text.size() && std::isspace(static_cast<unsigned char>(text[j]))) {
        if (text[j] == '\n') ++newlines;
        ++j;
    }
    end = j;
    return newlines >= 2;
}

std::string join_texts(const std::vector<Chunk>& chunks, size_t begin, size_t end) {
    std::string out;
    for (size_t i = begin; i < end; ++i) {
        if (!out.empty()) out += ' ';
        out += chunks[i].text;
    }
    return out;
}

std::string trim(const std::string& s) {
    size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

}  // namespace

std::unique_ptr<TokenCounter> whitespace_counter() { return std::make_unique<WhitespaceCounter>(); }

std::unique_ptr<TokenCounter> http_token_counter(const std::string& endpoint) {
    return std::make_unique<HttpTokenCounter>(endpoint);
}

std::vector<EquationSpan> find_equation_spans(const std::string& text) {
    std::vector<EquationSpan> spans;
    size_t i = 0;
    auto unescaped_dollar = [&](size_t p) {
        return text[p] == '$' && (p == 0 || text[p - 1] != '\\');
    };
    while (i < text.size()) {
        if (text.compare(i, 7, "\\begin{") == 0) {
            size_t name_end = text.find('}', i + 7);
            if (name_end != std::string::npos) {
                std::string closer = "\\end{" + text.substr(i + 7, name_end - i - 7) + "}";
                size_t close = text.find(closer, name_end);
                size_t end = close == std::string::npos ? text.size() : close + closer.size();
                spans.push_back({i, end});
                i = end;
                continue;
            }
        }
        if (unescaped_dollar(i)) {
            bool display = i + 1 < text.size() && text[i + 1] == '$';
            size_t open_len = display ? 2 : 1;
            size_t j = i + open_len;
            size_t end = text.size();
            while (j < text.size()) {
                if (unescaped_dollar(j)) {
                    end = j + (display && j + 1 < text.size() && text[j + 1] == '$' ? 2 : 1);
                    break;
                }
                ++j;
            }
            spans.push_back({i, end});
            i = end;
            continue;
        }
        ++i;
    }
    return spans;
}

std::vector<std::string> split_sentences(const std::string& text) {
    std::vector<EquationSpan> spans = find_equation_spans(text);
    auto in_span = [&](size_t p) {
        for (const auto& s : spans) {
            if (p >= s.begin && p < s.end) return true;
        }
        return false;
    };

    std::vector<std::string> sentences;
    size_t start = 0;
    size_t i = 0;
    while (i < text.size()) {
        char c = text[i];
        if ((c == '.' || c == '?' || c == '!') && !in_span(i)) {
            size_t j = i + 1;
            while (j < text.size() && (text[j] == '.' || text[j] == '?' || text[j] == '!')) ++j;
            size_t k = j;
            while (k < text.size() && std::isspace(static_cast<unsigned char>(text[k]))) ++k;
            if (k > j && k < text.size() && std::isupper(static_cast<unsigned char>(text[k]))) {
                std::string sentence = trim(text.substr(start, j - start));
                if (!sentence.empty()) sentences.push_back(std::move(sentence));
                start = k;
                i = k;
                continue;
            }
            i = j;
            continue;
        }
        ++i;
    }
    std::string tail = trim(text.substr(start));
    if (!tail.empty()) sentences.push_back(std::move(tail));
    return sentences;
}

std::vector<Chunk> chunk_sentences(const Document& doc, TokenCounter& tc, size_t budget) {
    if (budget < 1) throw ConfigError("chunk budget must be >= 1");
    if (trim(doc.text).empty()) throw StageError("chunk_sentences: empty document");

    std::vector<std::string> sentences = split_sentences(doc.text);
    std::vector<Chunk> chunks;
    std::string cur;
    size_t cur_tokens = 0;

    auto flush = [&] {
        if (cur.empty()) return;
        Chunk c;
        c.index = chunks.size();
        c.text = cur;
        c.tokens = tc.count(cur);
        c.kind = find_equation_spans(cur).empty() ? ChunkKind::Prose : ChunkKind::EquationBearing;
        chunks.push_back(std::move(c));
        cur.clear();
        cur_tokens = 0;
    };

    for (const auto& sentence : sentences) {
        size_t t = tc.count(sentence);
        if (!cur.empty() && cur_tokens + t > budget) flush();
        if (cur.empty() && t > budget) {
            // Oversize unsplittable unit: its own chunk, kept intact.
            cur = sentence;
            cur_tokens = t;
            flush();
            continue;
        }
        if (!cur.empty()) cur += ' ';
        cur += sentence;
        cur_tokens += t;
    }
    flush();
    return chunks;
}

std::vector<Chunk> chunk_paragraphs(const Document& doc, TokenCounter& tc, size_t max_paragraph) {
    if (max_paragraph < 1) throw ConfigError("max paragraph size must be >= 1");
    if (trim(doc.text).empty()) throw StageError("chunk_paragraphs: empty document");

    std::vector<std::string> paragraphs;
    size_t start = 0, i = 0;
    const std::string& text = doc.text;
    while (i < text.size()) {
        size_t end;
        if (is_blank_break(text, i, end)) {
            std::string p = trim(text.substr(start, i - start));
            if (!p.empty()) paragraphs.push_back(std::move(p));
            start = end;
            i = end;
        } else {
            ++i;
        }
    }
    std::string tail = trim(text.substr(start));
    if (!tail.empty()) paragraphs.push_back(std::move(tail));

    std::vector<Chunk> chunks;
    for (const auto& p : paragraphs) {
        size_t t = tc.count(p);
        if (t <= max_paragraph) {
            Chunk c;
            c.index = chunks.size();
            c.text = p;
            c.tokens = t;
            c.kind = find_equation_spans(p).empty() ? ChunkKind::Prose : ChunkKind::EquationBearing;
            chunks.push_back(std::move(c));
        } else {
            Document sub;
            sub.text = p;
            for (Chunk& c : chunk_sentences(sub, tc, max_paragraph)) {
                c.index = chunks.size();
                chunks.push_back(std::move(c));
            }
        }
    }
    return chunks;
}

std::vector<TrainingPair> pair_pile(const std::vector<Chunk>& chunks) {
    std::vector<TrainingPair> pairs;
    for (size_t s = 0; s + 6 <= chunks.size(); s += 2) {
        TrainingPair p;
        p.strategy = PairStrategy::PileChunks;
        p.input = join_texts(chunks, s, s + 3);
        p.output = join_texts(chunks, s + 3, s + 6);
        for (size_t i = s; i < s + 3; ++i) p.tokens_in += chunks[i].tokens;
        for (size_t i = s + 3; i < s + 6; ++i) p.tokens_out += chunks[i].tokens;
        pairs.push_back(std::move(p));
    }
    return pairs;
}

std::vector<TrainingPair> pair_paper(const std::vector<Chunk>& chunks, TokenCounter& tc,
                                     size_t pair_budget, size_t side_target) {
    (void)tc;  // chunk token counts were produced by the same counter
    std::vector<TrainingPair> pairs;
    const size_t n = chunks.size();
    size_t s = 0;
    while (s + 1 < n) {
        // Grow the input toward side_target, leaving budget room.
        size_t in_end = s;
        size_t tokens_in = 0;
        while (in_end < n && tokens_in < side_target) {
            size_t t = chunks[in_end].tokens;
            if (tokens_in > 0 && tokens_in + t > pair_budget) break;
            tokens_in += t;
            ++in_end;
        }
        if (in_end == s) break;

        // Grow the output toward side_target within the remaining budget.
        size_t out_begin = in_end;
        size_t j = out_begin;
        size_t tokens_out = 0;
        while (j < n && tokens_out < side_target &&
               tokens_in + tokens_out + chunks[j].tokens <= pair_budget) {
            tokens_out += chunks[j].tokens;
            ++j;
        }
        if (j == out_begin || tokens_in + tokens_out > pair_budget) break;

        TrainingPair p;
        p.strategy = PairStrategy::PaperParagraphs;
        p.input = join_texts(chunks, s, in_end);
        p.output = join_texts(chunks, out_begin, j);
        p.tokens_in = tokens_in;
        p.tokens_out = tokens_out;
        pairs.push_back(std::move(p));

        if (j == n) break;  // output consumed the document tail
        size_t next = in_end - 1;  // next input starts at this input's final chunk
        if (next <= s) next = s + 1;
        s = next;
    }
    return pairs;
}

const char* to_string(PairStrategy s) {
    return s == PairStrategy::PileChunks ? "pile_chunks" : "paper_paragraphs";
}

std::string pair_to_json_line(const TrainingPair& p) {
    nlohmann::ordered_json j;
    j["input"] = p.input;
    j["output"] = p.output;
    j["tokens_in"] = p.tokens_in;
    j["tokens_out"] = p.tokens_out;
    j["source"] = p.source;
    j["doc_id"] = p.doc_id;
    j["strategy"] = to_string(p.strategy);
    return j.dump();
}

std::vector<TrainingPair> read_pairs(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open pairs file: " + path);
    std::vector<TrainingPair> out;
    std::string line;
    size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        nlohmann::json j = nlohmann::json::parse(line, nullptr, false);
        if (j.is_discarded() || !j.contains("input") || !j.contains("output")) {
            throw StageError(path + ": line " + std::to_string(line_no) + ": malformed pair record");
        }
        TrainingPair p;
        p.input = j["input"].get<std::string>();
        p.output = j["output"].get<std::string>();
        p.tokens_in = j.value("tokens_in", size_t{0});
        p.tokens_out = j.value("tokens_out", size_t{0});
        p.source = j.value("source", std::string{});
        p.doc_id = j.value("doc_id", uint64_t{0});
        p.strategy = j.value("strategy", std::string{"pile_chunks"}) == "paper_paragraphs"
                         ? PairStrategy::PaperParagraphs
                         : PairStrategy::PileChunks;
        out.push_back(std::move(p));
    }
    return out;
}

RunManifest make_pairs(const std::string& input_path, const std::string& output_path,
                       TokenCounter& tc, const PairingConfig& cfg) {
    RunManifest m;
    m.stage = "make-pairs";

    DocumentReader reader(input_path);
    std::ofstream out(output_path, std::ios::binary);
    if (!out) throw ConfigError("cannot open output file for writing: " + output_path);

    while (auto doc = reader.next()) {
        ++m.docs_in;
        std::vector<Chunk> chunks;
        std::vector<TrainingPair> pairs;
        try {
            if (cfg.strategy == PairStrategy::PileChunks) {
                chunks = chunk_sentences(*doc, tc, cfg.chunk_budget);
                pairs = pair_pile(chunks);
            } else {
                chunks = chunk_paragraphs(*doc, tc, cfg.max_paragraph);
                pairs = pair_paper(chunks, tc, cfg.pair_budget, cfg.side_target);
            }
        } catch (const std::exception& e) {
            throw StageError("make-pairs: doc " + std::to_string(doc->id) + ": " + e.what());
        }
        if (pairs.empty()) {
            m.drop("no_pairs");
            continue;
        }
        for (auto& p : pairs) {
            p.source = doc->source;
            p.doc_id = doc->id;
            out << pair_to_json_line(p) << '\n';
        }
        ++m.docs_out;
    }
    if (!out) throw StageError("write failure on " + output_path);
    return m;
}

}  // namespace curate
