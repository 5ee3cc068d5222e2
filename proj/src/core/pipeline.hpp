#pragma once

#include <string>

#include <json.hpp>

#include "metrics.hpp"
#include "ovo.hpp"

namespace qsvm {

enum class SamplerType { sa, exact };

/// Fully resolved training configuration. Parses from a JSON document in
/// which every field is optional; unknown keys are rejected to catch
/// misspelled options.
struct TrainConfig {
    EncodingConfig encoding;          // kernel spec included
    SamplerType sampler_type = SamplerType::sa;
    AnnealConfig anneal;
    long enumeration_cap = kDefaultEnumerationCap;
    BoltzmannConfig boltzmann;
    Aggregation aggregation = Aggregation::prob;
    BatchConfig batch;
    long variable_budget = kDefaultVariableBudget;
    int threads = 0;

    static TrainConfig from_json(const nlohmann::json& doc);
    static TrainConfig from_json_text(const std::string& text);
    nlohmann::json to_json() const;

    SamplerFn make_sampler() const;
};

/// Trained classifier: a single ensemble for two-class data (with the
/// original labels the signs map back to), or a one-vs-one model.
struct Model {
    enum class Type { ensemble, ovo };
    Type type = Type::ensemble;

    EnsembleModel ensemble;       // type == ensemble
    long positive_label = 1;      // class predicted on +1
    long negative_label = -1;     // class predicted on -1

    OvoModel ovo;                 // type == ovo

    long num_features() const {
        return type == Type::ensemble ? ensemble.num_features() : ovo.num_features();
    }
};

/// Trains on a labeled dataset; two classes produce an ensemble model with
/// the greater label mapped to +1, three or more train one-vs-one.
/// `report` (optional) receives a JSON document with the resolved
/// configuration and per-batch sampling statistics.
Model train_model(const Dataset& data, const TrainConfig& cfg, nlohmann::json* report = nullptr);

long predict_model(const Model& model, const double* x, long num_features);
std::vector<long> predict_dataset(const Model& model, const Dataset& data);

/// Ensemble vote margin for binary models, predicted class label for
/// one-vs-one models; feeds decision-boundary grids.
double model_decision(const Model& model, const double* x, long num_features);

/// Binary models report metrics against `positive_class` (default: the
/// class mapped to +1); one-vs-one models report macro averages.
MetricsReport evaluate_model(const Model& model, const Dataset& data,
                             std::optional<long> positive_class = std::nullopt);

nlohmann::json metrics_to_json(const MetricsReport& report);
std::string metrics_table(const MetricsReport& report);

nlohmann::json model_to_json(const Model& model);
Model model_from_json(const nlohmann::json& doc);

void save_model(const Model& model, const std::string& path);
Model load_model(const std::string& path);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

} // namespace qsvm
