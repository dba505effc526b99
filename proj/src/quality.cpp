#include "curate/quality.hpp"

#include <cctype>

#include <httplib.h>
#include <json.hpp>

#include "curate/error.hpp"
#include "curate/jsonl.hpp"
#include "http_client.hpp"

namespace curate {

const char* to_string(QualityClass c) {
    switch (c) {
        case QualityClass::High: return "high";
        case QualityClass::Medium: return "medium";
        case QualityClass::Low: return "low";
    }
    return "low";
}

QualityClass quality_class_from_string(const std::string& s) {
    if (s == "high") return QualityClass::High;
    if (s == "medium") return QualityClass::Medium;
    if (s == "low") return QualityClass::Low;
    throw StageError("unknown quality label: " + s);
}

QualityFeatures quality_features(const std::string& text) {
    QualityFeatures f;
    if (text.empty()) return f;  // defined score 0

    size_t printable = 0, alpha = 0, non_space = 0, symbols = 0;
    size_t words = 0;
    size_t sentences = 0;
    bool in_word = false;
    for (unsigned char c : text) {
        if (std::isprint(c) || std::isspace(c)) ++printable;
        if (!std::isspace(c)) ++non_space;
        if (std::isalpha(c)) ++alpha;
        if (!std::isalnum(c) && !std::isspace(c)) ++symbols;
        if (c == '.' || c == '?' || c == '!') ++sentences;
        bool space = std::isspace(c);
        if (!space && !in_word) ++words;
        in_word = !space;
    }
    if (sentences == 0) sentences = 1;

    f.printable_ratio = static_cast<double>(printable) / static_cast<double>(text.size());
    f.alphabetic_ratio =
        non_space == 0 ? 0.0 : static_cast<double>(alpha) / static_cast<double>(non_space);
    double mean_sentence_words = static_cast<double>(words) / static_cast<double>(sentences);
    f.sentence_length_ok = (mean_sentence_words >= 3.0 && mean_sentence_words <= 80.0) ? 1.0 : 0.0;
    double symbol_ratio =
        words == 0 ? 1.0 : static_cast<double>(symbols) / static_cast<double>(words);
    f.symbol_penalty = symbol_ratio >= 1.0 ? 0.0 : 1.0 - symbol_ratio;
    return f;
}

namespace {

class HeuristicClassifier final : public QualityClassifier {
public:
    QualityLabel classify(const std::string& text) override {
        double score = quality_features(text).score();
        QualityClass label = score >= 0.66   ? QualityClass::High
                             : score >= 0.33 ? QualityClass::Medium
                                             : QualityClass::Low;
        return {label, score};
    }
    std::string name() const override { return "heuristic"; }
    bool is_deterministic() const override { return true; }
};

class HttpClassifier final : public QualityClassifier {
public:
    explicit HttpClassifier(const std::string& endpoint) : endpoint_(endpoint) {
        auto [base, path] = detail::split_url(endpoint);
        base_ = base;
        path_ = path;
    }

    QualityLabel classify(const std::string& text) override {
        httplib::Client client(base_);
        nlohmann::json req{{"text", text}};
        auto res = client.Post(path_, req.dump(), "application/json");
        if (!res || res->status != 200) {
            throw StageError("quality classifier request to " + endpoint_ + " failed" +
                             (res ? " with status " + std::to_string(res->status) : ""));
        }
        nlohmann::json j = nlohmann::json::parse(res->body, nullptr, false);
        if (j.is_discarded() || !j.contains("label")) {
            throw StageError("quality classifier returned malformed response");
        }
        QualityLabel out;
        out.label = quality_class_from_string(j["label"].get<std::string>());
        out.score = j.value("score", 0.0);
        return out;
    }
    std::string name() const override { return "http:" + endpoint_; }
    bool is_deterministic() const override { return false; }

private:
    std::string endpoint_, base_, path_;
};

}  // namespace

std::unique_ptr<QualityClassifier> heuristic_classifier() {
    return std::make_unique<HeuristicClassifier>();
}

std::unique_ptr<QualityClassifier> http_classifier(const std::string& endpoint) {
    return std::make_unique<HttpClassifier>(endpoint);
}

RunManifest filter_quality(const std::string& input_path, const std::string& output_path,
                           QualityClassifier& clf) {
    RunManifest m;
    m.stage = "filter-quality";

    DocumentReader reader(input_path);
    DocumentWriter writer(output_path);
    while (auto doc = reader.next()) {
        ++m.docs_in;
        QualityLabel label;
        try {
            label = clf.classify(doc->text);
        } catch (const std::exception& e) {
            throw StageError("quality classification failed for doc " + std::to_string(doc->id) +
                             ": " + e.what());
        }
        if (label.label == QualityClass::Low) {
            m.drop("low_quality");
        } else {
            writer.write(*doc);
            ++m.docs_out;
        }
    }
    writer.close();
    return m;
}

}  // namespace curate
