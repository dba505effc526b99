#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "curate/document.hpp"

namespace curate {

class TokenCounter {
public:
    virtual ~TokenCounter() = default;
    virtual size_t count(const std::string& text) = 0;
    virtual std::string name() const = 0;
};

// Counts maximal non-whitespace runs. The deterministic test tokenizer.
std::unique_ptr<TokenCounter> whitespace_counter();

// HTTP client posting {"texts": [...]} and expecting {"counts": [...]}.
std::unique_ptr<TokenCounter> http_token_counter(const std::string& endpoint);

enum class ChunkKind { Prose, EquationBearing };

struct Chunk {
    size_t index = 0;
    std::string text;
    size_t tokens = 0;
    ChunkKind kind = ChunkKind::Prose;
};

enum class PairStrategy { PileChunks, PaperParagraphs };

struct TrainingPair {
    std::string input;
    std::string output;
    size_t tokens_in = 0;
    size_t tokens_out = 0;
    std::string source;
    uint64_t doc_id = 0;
    PairStrategy strategy = PairStrategy::PileChunks;
};

// Spans of inline/display math and LaTeX environments; never split across
// chunks and masked during sentence boundary detection.
struct EquationSpan {
    size_t begin = 0;
    size_t end = 0;  // one past the last byte
};
std::vector<EquationSpan> find_equation_spans(const std::string& text);

// Split into sentences at [.?!] + whitespace + capital, equation spans masked.
std::vector<std::string> split_sentences(const std::string& text);

// Greedy sentence packing up to `budget` tokens per chunk. An oversize single
// sentence becomes its own chunk (flagged equation-bearing when it holds one).
std::vector<Chunk> chunk_sentences(const Document& doc, TokenCounter& tc, size_t budget = 600);

// Split at blank lines; paragraphs over max_paragraph are re-split
// sentence-aware.
std::vector<Chunk> chunk_paragraphs(const Document& doc, TokenCounter& tc,
                                    size_t max_paragraph = 2000);

// Fixed 3+3 windows advancing two chunks, so consecutive inputs overlap in
// one chunk: (C1 C2 C3 -> C4 C5 C6), (C3 C4 C5 -> C6 C7 C8), ...
std::vector<TrainingPair> pair_pile(const std::vector<Chunk>& chunks);

// Variable-width windows: grow input to ~side_target tokens, then output,
// bounded by pair_budget in total; the next window starts at the previous
// input's final chunk.
std::vector<TrainingPair> pair_paper(const std::vector<Chunk>& chunks, TokenCounter& tc,
                                     size_t pair_budget = 4096, size_t side_target = 2000);

// File-to-file stage over a document corpus; pairs carry doc provenance and
// are ordered by (doc_id, window). Output keys fixed:
// input, output, tokens_in, tokens_out, source, doc_id, strategy.
struct PairingConfig {
    PairStrategy strategy = PairStrategy::PileChunks;
    size_t chunk_budget = 600;
    size_t pair_budget = 4096;
    size_t side_target = 2000;
    size_t max_paragraph = 2000;
};
RunManifest make_pairs(const std::string& input_path, const std::string& output_path,
                       TokenCounter& tc, const PairingConfig& cfg);

std::string pair_to_json_line(const TrainingPair& p);
std::vector<TrainingPair> read_pairs(const std::string& path);

const char* to_string(PairStrategy s);

}  // namespace curate
