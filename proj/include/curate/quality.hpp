#pragma once

#include <functional>
#include <memory>
#include <string>

#include "curate/document.hpp"

namespace curate {

enum class QualityClass { High, Medium, Low };

const char* to_string(QualityClass c);
QualityClass quality_class_from_string(const std::string& s);

struct QualityLabel {
    QualityClass label = QualityClass::Low;
    double score = 0.0;  // classifier confidence in [0,1]
};

class QualityClassifier {
public:
    virtual ~QualityClassifier() = default;
    virtual QualityLabel classify(const std::string& text) = 0;
    virtual std::string name() const = 0;
    virtual bool is_deterministic() const = 0;
};

// Deterministic baseline standing in for the external model. Scores the mean
// of four features: printable-character ratio, alphabetic ratio (over
// non-whitespace), mean sentence length falling in [3,80] words, and
// 1 - symbol-to-word ratio. score >= 0.66 -> high, >= 0.33 -> medium.
std::unique_ptr<QualityClassifier> heuristic_classifier();

// Exposed so tests can recompute the score from an independent path.
struct QualityFeatures {
    double printable_ratio = 0.0;
    double alphabetic_ratio = 0.0;
    double sentence_length_ok = 0.0;
    double symbol_penalty = 0.0;
    double score() const {
        return (printable_ratio + alphabetic_ratio + sentence_length_ok + symbol_penalty) / 4.0;
    }
};
QualityFeatures quality_features(const std::string& text);

// HTTP client for an external classifier service.
// POST {"text": ...} -> {"label": "high|medium|low", "score": ...}
std::unique_ptr<QualityClassifier> http_classifier(const std::string& endpoint);

// Keep documents labeled high or medium, preserving input order.
// Fails fast on classifier errors, naming the document id.
RunManifest filter_quality(const std::string& input_path, const std::string& output_path,
                           QualityClassifier& clf);

}  // namespace curate
