#include "curate/mixer.hpp"

#include <cmath>
#include <fstream>
#include <random>
#include <set>

#include <json.hpp>

#include "curate/error.hpp"

namespace curate {

void MixSpec::validate() const {
    if (entries.empty()) throw ConfigError("mix spec has no entries");
    double sum = 0.0;
    std::set<std::string> labels;
    for (const auto& e : entries) {
        if (!(e.weight > 0.0 && e.weight <= 1.0))
            throw ConfigError("mix weight for " + e.label + " must lie in (0,1]");
        if (!labels.insert(e.label).second) throw ConfigError("duplicate mix label: " + e.label);
        sum += e.weight;
    }
    if (std::abs(sum - 1.0) > 1e-9) throw ConfigError("mix weights must sum to 1");
}

MixSpec load_mix_spec(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open mix spec: " + path);
    nlohmann::json j = nlohmann::json::parse(in, nullptr, false);
    if (j.is_discarded() || !j.is_object()) throw ConfigError("mix spec is not a JSON object: " + path);

    MixSpec spec;
    if (!j.contains("entries") || !j["entries"].is_array())
        throw ConfigError("mix spec missing entries array");
    for (const auto& e : j["entries"]) {
        MixEntry entry;
        entry.label = e.at("label").get<std::string>();
        entry.weight = e.at("weight").get<double>();
        entry.path = e.at("path").get<std::string>();
        spec.entries.push_back(std::move(entry));
    }
    spec.seed = j.value("seed", uint64_t{0});
    if (j.contains("total")) {
        if (j["total"].is_string()) {
            if (j["total"].get<std::string>() != "exhaust")
                throw ConfigError("mix total must be a count or \"exhaust\"");
        } else {
            spec.total = j["total"].get<uint64_t>();
        }
    }
    spec.validate();
    return spec;
}

RunManifest mix(const MixSpec& spec, const std::string& output_path, MixReport* report_out) {
    spec.validate();

    struct Source {
        std::string label;
        double weight;
        std::ifstream in;
        std::string pending;
        bool has_pending = false;

        bool advance() {
            has_pending = false;
            while (std::getline(in, pending)) {
                if (!pending.empty()) {
                    has_pending = true;
                    return true;
                }
            }
            return false;
        }
    };

    RunManifest m;
    m.stage = "mix";
    m.seed = spec.seed;
    MixReport report;

    std::vector<Source> sources(spec.entries.size());
    std::vector<size_t> active;
    for (size_t i = 0; i < spec.entries.size(); ++i) {
        sources[i].label = spec.entries[i].label;
        sources[i].weight = spec.entries[i].weight;
        sources[i].in.open(spec.entries[i].path, std::ios::binary);
        if (!sources[i].in) throw ConfigError("cannot open mix source: " + spec.entries[i].path);
        report.drawn[sources[i].label] = 0;
        if (sources[i].advance()) {
            active.push_back(i);
        } else {
            report.exhausted_order.push_back(sources[i].label);
        }
    }
    if (active.empty()) throw ConfigError("mix: all sources are empty");

    std::ofstream out(output_path, std::ios::binary);
    if (!out) throw ConfigError("cannot open output file for writing: " + output_path);

    std::mt19937_64 rng(spec.seed);
    auto uniform = [&] { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };

    while (!active.empty() && (!spec.total || m.docs_out < *spec.total)) {
        double total_weight = 0.0;
        for (size_t i : active) total_weight += sources[i].weight;
        double u = uniform() * total_weight;

        size_t chosen = active.back();
        double acc = 0.0;
        for (size_t i : active) {
            acc += sources[i].weight;
            if (u < acc) {
                chosen = i;
                break;
            }
        }

        out << sources[chosen].pending << '\n';
        ++m.docs_out;
        ++m.docs_in;
        ++report.drawn[sources[chosen].label];
        if (!sources[chosen].advance()) {
            report.exhausted_order.push_back(sources[chosen].label);
            std::erase(active, chosen);
        }
    }
    if (!out) throw StageError("write failure on " + output_path);

    // Account unconsumed records as drops.
    for (auto& src : sources) {
        uint64_t remaining = 0;
        if (src.has_pending) ++remaining;
        std::string line;
        while (std::getline(src.in, line)) {
            if (!line.empty()) ++remaining;
        }
        if (remaining > 0) {
            m.docs_in += remaining;
            m.docs_dropped += remaining;
            m.drop_reasons["unconsumed:" + src.label] = remaining;
        }
    }

    nlohmann::ordered_json rj;
    rj["drawn"] = nlohmann::ordered_json::object();
    for (const auto& [label, count] : report.drawn) rj["drawn"][label] = count;
    rj["exhausted_order"] = report.exhausted_order;
    std::ofstream rout(output_path + ".mix_report.json", std::ios::binary);
    if (rout) rout << rj.dump(2) << '\n';

    if (report_out) *report_out = std::move(report);
    return m;
}

}  // namespace curate
