#pragma once

#include <memory>
#include <string>
#include <vector>

#include "curate/document.hpp"

namespace curate {

struct EmbeddingVector {
    std::vector<double> values;
    bool normalized = false;
    size_t dimension() const { return values.size(); }
};

class Embedder {
public:
    virtual ~Embedder() = default;
    virtual std::vector<EmbeddingVector> embed_batch(const std::vector<std::string>& texts) = 0;
    virtual size_t dimension() const = 0;
    virtual std::string name() const = 0;
};

struct ReferenceQuery {
    std::string topic;
    std::string query;
};

struct ReferenceQuerySet {
    std::vector<ReferenceQuery> queries;
    std::vector<EmbeddingVector> embeddings;  // 1:1 with queries, filled lazily
};

// dot(a,b) / (|a||b|). Throws on dimension mismatch or a zero vector.
double cosine(const EmbeddingVector& a, const EmbeddingVector& b);

// Deterministic hashed bag-of-words embedder: each lowercased token maps to a
// seeded coordinate and sign, counts accumulate, the vector is L2-normalized.
// Empty or whitespace-only text yields a zero vector, rejected at use as a
// degenerate embedding.
std::unique_ptr<Embedder> test_embedder(size_t dimension, uint64_t seed);

// HTTP client posting {"texts": [...]} and expecting {"vectors": [[...], ...]}.
// The model name is passed through to the service untouched.
std::unique_ptr<Embedder> http_embedder(const std::string& endpoint, size_t dimension,
                                        const std::string& model = "");

// One query per reference topic; the toolkit's default filter target.
std::vector<ReferenceQuery> default_reference_queries();

std::vector<ReferenceQuery> load_reference_queries(const std::string& path);
void write_reference_queries(const std::string& path, const std::vector<ReferenceQuery>& queries);

// Keep documents whose max cosine similarity against any reference query is
// >= threshold. Per-document best score and topic go to report_path (JSONL)
// when nonempty. Order preserved; embedder failures abort with the doc id.
RunManifest filter_semantic(const std::string& input_path, const std::string& output_path,
                            const std::vector<ReferenceQuery>& queries, Embedder& embedder,
                            double threshold, size_t workers = 1,
                            const std::string& report_path = "");

}  // namespace curate
