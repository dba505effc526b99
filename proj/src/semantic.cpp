#include "curate/semantic.hpp"

#include <cctype>
#include <cmath>
#include <fstream>
#include <thread>

#include <httplib.h>
#include <json.hpp>

#include "curate/error.hpp"
#include "curate/hashing.hpp"
#include "curate/jsonl.hpp"
#include "http_client.hpp"

namespace curate {

double cosine(const EmbeddingVector& a, const EmbeddingVector& b) {
    if (a.dimension() != b.dimension() || a.dimension() == 0)
        throw ConfigError("cosine: dimension mismatch");
    double dot = 0.0, na = 0.0, nb = 0.0;
    for (size_t i = 0; i < a.values.size(); ++i) {
        dot += a.values[i] * b.values[i];
        na += a.values[i] * a.values[i];
        nb += b.values[i] * b.values[i];
    }
    if (na == 0.0 || nb == 0.0) throw StageError("degenerate embedding");
    if (a.normalized && b.normalized) return dot;
    return dot / (std::sqrt(na) * std::sqrt(nb));
}

namespace {

class HashedBagOfWordsEmbedder final : public Embedder {
public:
    HashedBagOfWordsEmbedder(size_t dimension, uint64_t seed) : d_(dimension), seed_(seed) {
        if (d_ < 8) throw ConfigError("test embedder dimension must be >= 8");
    }

    std::vector<EmbeddingVector> embed_batch(const std::vector<std::string>& texts) override {
        std::vector<EmbeddingVector> out;
        out.reserve(texts.size());
        for (const auto& text : texts) out.push_back(embed_one(text));
        return out;
    }
    size_t dimension() const override { return d_; }
    std::string name() const override { return "test-hashed-bow"; }

private:
    EmbeddingVector embed_one(const std::string& text) const {
        EmbeddingVector v;
        v.values.assign(d_, 0.0);
        std::string token;
        auto flush = [&] {
            if (token.empty()) return;
            uint64_t h = mix64(hash_bytes(token), seed_);
            size_t coord = static_cast<size_t>(h % d_);
            double sign = (h >> 63) ? -1.0 : 1.0;
            v.values[coord] += sign;
            token.clear();
        };
        for (char c : text) {
            if (std::isspace(static_cast<unsigned char>(c))) {
                flush();
            } else {
                token.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
            }
        }
        flush();
        double norm = 0.0;
        for (double x : v.values) norm += x * x;
        if (norm > 0.0) {
            norm = std::sqrt(norm);
            for (double& x : v.values) x /= norm;
            v.normalized = true;
        }
        return v;
    }

    size_t d_;
    uint64_t seed_;
};

class HttpEmbedder final : public Embedder {
public:
    HttpEmbedder(const std::string& endpoint, size_t dimension, std::string model)
        : endpoint_(endpoint), d_(dimension), model_(std::move(model)) {
        auto [base, path] = detail::split_url(endpoint);
        base_ = base;
        path_ = path;
    }

    std::vector<EmbeddingVector> embed_batch(const std::vector<std::string>& texts) override {
        httplib::Client client(base_);
        client.set_read_timeout(120, 0);
        nlohmann::json req{{"texts", texts}};
        if (!model_.empty()) req["model"] = model_;
        auto res = client.Post(path_, req.dump(), "application/json");
        if (!res || res->status != 200) {
            throw StageError("embedding request to " + endpoint_ + " failed" +
                             (res ? " with status " + std::to_string(res->status) : ""));
        }
        nlohmann::json j = nlohmann::json::parse(res->body, nullptr, false);
        if (j.is_discarded() || !j.contains("vectors") || !j["vectors"].is_array() ||
            j["vectors"].size() != texts.size()) {
            throw StageError("embedding service returned malformed response");
        }
        std::vector<EmbeddingVector> out;
        out.reserve(texts.size());
        for (const auto& row : j["vectors"]) {
            EmbeddingVector v;
            v.values = row.get<std::vector<double>>();
            if (v.dimension() != d_) throw StageError("embedding service returned wrong dimension");
            out.push_back(std::move(v));
        }
        return out;
    }
    size_t dimension() const override { return d_; }
    std::string name() const override { return "http:" + endpoint_; }

private:
    std::string endpoint_, base_, path_;
    size_t d_;
    std::string model_;
};

}  // namespace

std::unique_ptr<Embedder> test_embedder(size_t dimension, uint64_t seed) {
    return std::make_unique<HashedBagOfWordsEmbedder>(dimension, seed);
}

std::unique_ptr<Embedder> http_embedder(const std::string& endpoint, size_t dimension,
                                        const std::string& model) {
    return std::make_unique<HttpEmbedder>(endpoint, dimension, model);
}

std::vector<ReferenceQuery> default_reference_queries() {
    return {
        {"energy_systems_infrastructure",
         "power grids smart grids microgrids sector coupling and energy infrastructure"},
        {"renewable_energy",
         "renewable energy sources solar wind hydropower geothermal biomass and ocean energy"},
        {"fossil_fuels",
         "fossil fuels coal oil petroleum natural gas exploration extraction and refining"},
        {"nuclear_energy",
         "nuclear energy fission reactors small modular reactors fusion and waste management"},
        {"hydrogen_economy",
         "hydrogen production storage transport fuel cells and industrial applications"},
        {"energy_policy_economics",
         "energy policy climate policy carbon pricing subsidies and energy market structures"},
        {"industrial_energy",
         "industrial energy systems combined heat and power decarbonization and electrification"},
        {"carbon_management",
         "carbon capture utilization and storage direct air capture and carbon management"},
        {"emerging_technologies",
         "emerging energy technologies artificial intelligence blockchain advanced materials and "
         "next generation photovoltaics"},
        {"energy_science_engineering",
         "thermodynamics heat engines gas turbines energy physics and chemical energy systems"},
        {"efficiency_conservation",
         "energy efficiency and conservation building efficiency and efficient systems"},
        {"environmental_impacts",
         "environmental impacts of energy emissions ecosystem effects and sustainability"},
        {"production_consumption",
         "energy production and consumption conversion processes and efficiency metrics"},
        {"energy_storage",
         "energy storage systems batteries thermal storage mechanical storage and hydrogen storage"},
        {"grid_integration",
         "grid integration of renewables balancing smart inverters interconnection and stability"},
        {"bioenergy", "energy in biological systems bioenergy and biomass utilization"},
    };
}

std::vector<ReferenceQuery> load_reference_queries(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open queries file: " + path);
    std::vector<ReferenceQuery> out;
    std::string line;
    size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        nlohmann::json j = nlohmann::json::parse(line, nullptr, false);
        if (j.is_discarded() || !j.contains("topic") || !j.contains("query")) {
            throw ConfigError(path + ": line " + std::to_string(line_no) +
                              ": expected {\"topic\": ..., \"query\": ...}");
        }
        out.push_back({j["topic"].get<std::string>(), j["query"].get<std::string>()});
    }
    if (out.empty()) throw ConfigError(path + ": query set is empty");
    return out;
}

void write_reference_queries(const std::string& path, const std::vector<ReferenceQuery>& queries) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot write queries file: " + path);
    for (const auto& q : queries) {
        nlohmann::ordered_json j{{"topic", q.topic}, {"query", q.query}};
        out << j.dump() << '\n';
    }
}

RunManifest filter_semantic(const std::string& input_path, const std::string& output_path,
                            const std::vector<ReferenceQuery>& queries, Embedder& embedder,
                            double threshold, size_t workers, const std::string& report_path) {
    if (!(threshold > 0.0 && threshold <= 1.0))
        throw ConfigError("filter-semantic: threshold must lie in (0,1]");
    if (queries.empty()) throw ConfigError("filter-semantic: query set is empty");

    std::vector<std::string> query_texts;
    for (const auto& q : queries) query_texts.push_back(q.query);
    std::vector<EmbeddingVector> query_vecs = embedder.embed_batch(query_texts);

    RunManifest m;
    m.stage = "filter-semantic";

    std::ofstream report;
    if (!report_path.empty()) {
        report.open(report_path, std::ios::binary);
        if (!report) throw StageError("cannot write report: " + report_path);
    }

    DocumentReader reader(input_path);
    DocumentWriter writer(output_path);
    const size_t batch_size = 64;
    std::vector<Document> batch;

    auto score_batch = [&](std::vector<Document>& docs) {
        std::vector<double> best_sim(docs.size());
        std::vector<size_t> best_query(docs.size());
        std::vector<std::string> errors(docs.size());

        size_t n_workers = std::max<size_t>(1, workers);
        size_t per = (docs.size() + n_workers - 1) / n_workers;
        std::vector<std::thread> threads;
        for (size_t w = 0; w < n_workers; ++w) {
            size_t lo = w * per, hi = std::min(docs.size(), lo + per);
            if (lo >= hi) break;
            threads.emplace_back([&, lo, hi] {
                std::vector<std::string> texts;
                for (size_t i = lo; i < hi; ++i) texts.push_back(docs[i].text);
                std::vector<EmbeddingVector> vecs;
                try {
                    vecs = embedder.embed_batch(texts);
                } catch (const std::exception& e) {
                    for (size_t i = lo; i < hi; ++i) errors[i] = e.what();
                    return;
                }
                for (size_t i = lo; i < hi; ++i) {
                    try {
                        double best = -2.0;
                        size_t best_q = 0;
                        for (size_t q = 0; q < query_vecs.size(); ++q) {
                            double s = cosine(vecs[i - lo], query_vecs[q]);
                            if (s > best) best = s, best_q = q;
                        }
                        best_sim[i] = best;
                        best_query[i] = best_q;
                    } catch (const std::exception& e) {
                        errors[i] = e.what();
                    }
                }
            });
        }
        for (auto& t : threads) t.join();

        for (size_t i = 0; i < docs.size(); ++i) {
            if (!errors[i].empty()) {
                throw StageError("filter-semantic: doc " + std::to_string(docs[i].id) + ": " +
                                 errors[i]);
            }
            bool keep = best_sim[i] >= threshold;
            if (report.is_open()) {
                nlohmann::ordered_json j{{"id", docs[i].id},
                                         {"max_similarity", best_sim[i]},
                                         {"best_topic", queries[best_query[i]].topic},
                                         {"retained", keep}};
                report << j.dump() << '\n';
            }
            if (keep) {
                writer.write(docs[i]);
                ++m.docs_out;
            } else {
                m.drop("below_semantic_threshold");
            }
        }
    };

    while (auto doc = reader.next()) {
        ++m.docs_in;
        batch.push_back(std::move(*doc));
        if (batch.size() >= batch_size) {
            score_batch(batch);
            batch.clear();
        }
    }
    if (!batch.empty()) score_batch(batch);
    writer.close();
    return m;
}

}  // namespace curate
