#include "curate/fuzzy_dedup.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <mutex>
#include <utility>
#include <fstream>
#include <functional>
#include <numeric>
#include <random>
#include <thread>
#include <unordered_map>

#include <json.hpp>

#include "curate/error.hpp"
#include "curate/hashing.hpp"
#include "curate/jsonl.hpp"

namespace curate {

namespace {
constexpr uint64_t kBandDomain = 0x42414e444b455931ULL;

// Disjoint-set over document ids.
class UnionFind {
public:
    explicit UnionFind(const std::vector<uint64_t>& ids) {
        for (uint64_t id : ids) parent_.emplace(id, id);
    }
    uint64_t find(uint64_t x) {
        uint64_t root = x;
        while (parent_[root] != root) root = parent_[root];
        while (parent_[x] != root) x = std::exchange(parent_[x], root);
        return root;
    }
    void unite(uint64_t a, uint64_t b) {
        a = find(a);
        b = find(b);
        if (a == b) return;
        if (b < a) std::swap(a, b);  // keep the smaller id as root
        parent_[b] = a;
    }

private:
    std::unordered_map<uint64_t, uint64_t> parent_;
};

using SimilarityFn = std::function<double(uint64_t, uint64_t)>;

std::vector<DuplicateEdge> refine_with(const std::map<BandKey, std::vector<uint64_t>>& buckets,
                                       double tau, double anchor_fraction, uint64_t seed,
                                       const SimilarityFn& similarity) {
    if (!(tau > 0.0 && tau <= 1.0)) throw ConfigError("refine: tau must lie in (0,1]");
    if (!(anchor_fraction > 0.0 && anchor_fraction <= 1.0))
        throw ConfigError("refine: anchor_fraction must lie in (0,1]");

    std::map<std::pair<uint64_t, uint64_t>, double> unique_edges;
    for (const auto& [key, raw_members] : buckets) {
        if (raw_members.size() < 2) continue;
        std::vector<uint64_t> members = raw_members;
        std::sort(members.begin(), members.end());

        size_t n_anchors = static_cast<size_t>(
            std::ceil(anchor_fraction * static_cast<double>(members.size())));
        n_anchors = std::clamp<size_t>(n_anchors, 1, members.size());

        // Schedule-independent: the draw depends only on (seed, band digest).
        std::mt19937_64 rng(mix64(seed, key.band_digest));
        std::vector<uint64_t> pool = members;
        for (size_t i = 0; i < n_anchors; ++i) {
            size_t j = i + static_cast<size_t>(rng() % (pool.size() - i));
            std::swap(pool[i], pool[j]);
        }

        for (size_t a = 0; a < n_anchors; ++a) {
            for (uint64_t other : members) {
                if (other == pool[a]) continue;
                double sim = similarity(pool[a], other);
                if (sim >= tau) {
                    auto pr = std::minmax(pool[a], other);
                    unique_edges.emplace(std::pair{pr.first, pr.second}, sim);
                }
            }
        }
    }

    std::vector<DuplicateEdge> edges;
    edges.reserve(unique_edges.size());
    for (const auto& [pr, sim] : unique_edges) edges.push_back({pr.first, pr.second, sim});
    return edges;
}

}  // namespace

size_t BandKeyHash::operator()(const BandKey& k) const {
    return static_cast<size_t>(mix64(k.band_digest ^ k.band_index));
}

std::vector<uint64_t> band_digests(const MinHashSignature& sig, const LshParams& p) {
    if (sig.n() != p.signature_length())
        throw ConfigError("band_digests: signature length does not equal bands * rows");
    std::vector<uint64_t> out(p.bands);
    for (size_t b = 0; b < p.bands; ++b) {
        uint64_t d = mix64(kBandDomain ^ b);
        for (size_t r = 0; r < p.rows; ++r) d = mix64(d ^ sig.values[b * p.rows + r]);
        out[b] = d;
    }
    return out;
}

std::map<BandKey, std::vector<uint64_t>> build_buckets(
    const std::map<uint64_t, MinHashSignature>& sigs, const LshParams& p) {
    std::map<BandKey, std::vector<uint64_t>> buckets;
    uint64_t expect_seed = 0;
    bool first = true;
    for (const auto& [id, sig] : sigs) {
        if (first) {
            expect_seed = sig.seed;
            first = false;
        } else if (sig.seed != expect_seed) {
            throw ConfigError("build_buckets: signatures have heterogeneous seeds");
        }
        std::vector<uint64_t> digests = band_digests(sig, p);
        for (size_t b = 0; b < p.bands; ++b) {
            buckets[{static_cast<uint32_t>(b), digests[b]}].push_back(id);
        }
    }
    return buckets;
}

std::vector<DuplicateEdge> refine_buckets(const std::map<BandKey, std::vector<uint64_t>>& buckets,
                                          const std::map<uint64_t, MinHashSignature>& sigs,
                                          double tau, double anchor_fraction, uint64_t seed) {
    return refine_with(buckets, tau, anchor_fraction, seed, [&](uint64_t a, uint64_t b) {
        return estimate_jaccard(sigs.at(a), sigs.at(b));
    });
}

DuplicateGraph build_graph(const std::vector<DuplicateEdge>& edges,
                           const std::vector<uint64_t>& all_ids) {
    DuplicateGraph g;
    g.nodes = all_ids;
    std::sort(g.nodes.begin(), g.nodes.end());
    g.edges = edges;

    UnionFind uf(g.nodes);
    for (const auto& e : edges) uf.unite(e.anchor_id, e.dup_id);

    std::map<uint64_t, std::vector<uint64_t>> by_root;
    for (uint64_t id : g.nodes) by_root[uf.find(id)].push_back(id);
    for (auto& [root, members] : by_root) {
        std::sort(members.begin(), members.end());
        g.components.push_back(std::move(members));
    }
    return g;
}

RunManifest dedup_fuzzy(const std::string& input_path, const std::string& output_path,
                        const FuzzyConfig& cfg, const std::string& graph_report_path,
                        DuplicateGraph* graph_out) {
    if (cfg.lsh.bands == 0 || cfg.lsh.rows == 0) throw ConfigError("dedup-fuzzy: invalid LSH params");

    RunManifest m;
    m.stage = "dedup-fuzzy";
    m.seed = cfg.seed;

    std::vector<Document> docs;
    {
        DocumentReader reader(input_path);
        while (auto doc = reader.next()) docs.push_back(std::move(*doc));
    }
    m.docs_in = docs.size();

    // Shingle + signature computation, shard-parallel with deterministic
    // placement by document index.
    const size_t n = cfg.lsh.signature_length();
    std::vector<ShingleSet> shingles(docs.size());
    std::vector<MinHashSignature> sig_by_idx(docs.size());
    std::vector<std::string> worker_errors;
    {
        size_t workers = std::max<size_t>(1, cfg.workers);
        std::vector<std::thread> threads;
        std::mutex err_mu;
        std::atomic<size_t> next{0};
        auto work = [&] {
            for (;;) {
                size_t i = next.fetch_add(1);
                if (i >= docs.size()) return;
                try {
                    shingles[i] = shingle(docs[i].text, cfg.k, cfg.unit);
                    sig_by_idx[i] = minhash(shingles[i], n, cfg.seed);
                } catch (const std::exception& e) {
                    std::lock_guard lock(err_mu);
                    worker_errors.push_back("doc " + std::to_string(docs[i].id) + ": " + e.what());
                }
            }
        };
        for (size_t w = 0; w < workers; ++w) threads.emplace_back(work);
        for (auto& t : threads) t.join();
    }
    if (!worker_errors.empty()) {
        std::sort(worker_errors.begin(), worker_errors.end());
        throw StageError("dedup-fuzzy: " + worker_errors.front());
    }

    std::map<uint64_t, MinHashSignature> sigs;
    std::unordered_map<uint64_t, size_t> idx_by_id;
    for (size_t i = 0; i < docs.size(); ++i) {
        sigs.emplace(docs[i].id, std::move(sig_by_idx[i]));
        idx_by_id.emplace(docs[i].id, i);
    }

    auto buckets = build_buckets(sigs, cfg.lsh);
    std::vector<DuplicateEdge> edges;
    if (cfg.exact_refine) {
        edges = refine_with(buckets, cfg.tau, cfg.anchor_fraction, cfg.seed,
                            [&](uint64_t a, uint64_t b) {
                                return jaccard(shingles[idx_by_id.at(a)], shingles[idx_by_id.at(b)]);
                            });
    } else {
        edges = refine_buckets(buckets, sigs, cfg.tau, cfg.anchor_fraction, cfg.seed);
    }

    std::vector<uint64_t> all_ids;
    all_ids.reserve(docs.size());
    for (const auto& d : docs) all_ids.push_back(d.id);
    DuplicateGraph graph = build_graph(edges, all_ids);

    std::vector<uint64_t> retained;
    for (const auto& comp : graph.components) retained.push_back(comp.front());
    std::sort(retained.begin(), retained.end());

    std::sort(docs.begin(), docs.end(),
              [](const Document& a, const Document& b) { return a.id < b.id; });
    DocumentWriter writer(output_path);
    size_t ri = 0;
    for (const auto& d : docs) {
        if (ri < retained.size() && retained[ri] == d.id) {
            writer.write(d);
            ++ri;
            ++m.docs_out;
        } else {
            m.drop("fuzzy_duplicate");
        }
    }
    writer.close();

    if (!graph_report_path.empty()) {
        std::ofstream out(graph_report_path, std::ios::binary);
        if (!out) throw StageError("cannot write graph report: " + graph_report_path);
        std::map<std::pair<uint64_t, uint64_t>, double> sim_by_pair;
        for (const auto& e : edges) sim_by_pair[{e.anchor_id, e.dup_id}] = e.similarity;
        for (const auto& comp : graph.components) {
            if (comp.size() < 2) continue;
            nlohmann::ordered_json j;
            j["representative"] = comp.front();
            j["members"] = comp;
            auto arr = nlohmann::ordered_json::array();
            for (const auto& [pr, sim] : sim_by_pair) {
                bool a_in = std::binary_search(comp.begin(), comp.end(), pr.first);
                if (a_in) arr.push_back({{"a", pr.first}, {"b", pr.second}, {"similarity", sim}});
            }
            j["edges"] = arr;
            out << j.dump() << '\n';
        }
    }

    if (graph_out) *graph_out = std::move(graph);
    return m;
}

}  // namespace curate
