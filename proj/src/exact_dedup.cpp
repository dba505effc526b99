#include "curate/exact_dedup.hpp"

#include <algorithm>
#include <fstream>
#include <unordered_map>
#include <vector>

#include <json.hpp>

#include "curate/error.hpp"
#include "curate/hashing.hpp"
#include "curate/jsonl.hpp"

namespace curate {

RunManifest dedup_exact(const std::string& input_path, const std::string& output_path,
                        const std::string& report_path) {
    RunManifest m;
    m.stage = "dedup-exact";

    struct Group {
        Document rep;                      // smallest-id occurrence of this text
        std::vector<uint64_t> dropped;     // ids of the other occurrences
    };
    std::vector<Group> groups;
    std::unordered_map<Digest128, std::vector<size_t>, Digest128Hash> by_digest;

    DocumentReader reader(input_path);
    while (auto doc = reader.next()) {
        ++m.docs_in;
        Digest128 digest = digest_text(doc->text);
        auto& candidates = by_digest[digest];
        Group* hit = nullptr;
        for (size_t gi : candidates) {
            if (groups[gi].rep.text == doc->text) {
                hit = &groups[gi];
                break;
            }
        }
        if (!hit) {
            candidates.push_back(groups.size());
            groups.push_back({std::move(*doc), {}});
        } else if (doc->id < hit->rep.id) {
            hit->dropped.push_back(hit->rep.id);
            hit->rep = std::move(*doc);
        } else {
            hit->dropped.push_back(doc->id);
        }
    }

    std::sort(groups.begin(), groups.end(),
              [](const Group& a, const Group& b) { return a.rep.id < b.rep.id; });

    DocumentWriter writer(output_path);
    for (const auto& g : groups) {
        writer.write(g.rep);
        ++m.docs_out;
        m.docs_dropped += g.dropped.size();
    }
    writer.close();
    if (m.docs_dropped > 0) m.drop_reasons["exact_duplicate"] = m.docs_dropped;

    if (!report_path.empty()) {
        struct Entry {
            uint64_t dropped, retained;
        };
        std::vector<Entry> entries;
        for (const auto& g : groups) {
            for (uint64_t id : g.dropped) entries.push_back({id, g.rep.id});
        }
        std::sort(entries.begin(), entries.end(),
                  [](const Entry& a, const Entry& b) { return a.dropped < b.dropped; });
        std::ofstream out(report_path, std::ios::binary);
        if (!out) throw StageError("cannot write dedup report: " + report_path);
        for (const auto& e : entries) {
            nlohmann::ordered_json j{{"dropped_id", e.dropped}, {"retained_id", e.retained}};
            out << j.dump() << '\n';
        }
    }
    return m;
}

}  // namespace curate
