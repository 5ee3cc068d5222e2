#include "ovo.hpp"

#include <string>

#include "error.hpp"

namespace qsvm {

TrainingSet build_pair_dataset(const Dataset& data, long class_i, long class_j) {
    validate(data);
    if (class_i == class_j)
        raise(ErrorCode::invalid_argument, "class pair must name two distinct classes");

    TrainingSet out;
    out.num_features = data.num_features;
    long count_i = 0, count_j = 0;
    for (long n = 0; n < data.num_samples; ++n) {
        const long y = data.labels[n];
        if (y != class_i && y != class_j) continue;
        const double* src = data.row(n);
        out.features.insert(out.features.end(), src, src + data.num_features);
        out.labels.push_back(y == class_i ? 1 : -1);
        ++out.num_samples;
        (y == class_i ? count_i : count_j) += 1;
    }
    if (count_i == 0)
        raise(ErrorCode::invalid_argument, "class " + std::to_string(class_i) + " has no samples");
    if (count_j == 0)
        raise(ErrorCode::invalid_argument, "class " + std::to_string(class_j) + " has no samples");
    return out;
}

OvoModel train_ovo(const Dataset& data, const EncodingConfig& enc, const BatchConfig& batch_cfg,
                   const SamplerFn& sampler, const BoltzmannConfig& boltz, Aggregation mode,
                   long variable_budget,
                   std::map<std::pair<long, long>, std::vector<TrainStats>>* stats) {
    validate(data);
    OvoModel model;
    model.classes = data.classes();
    if (model.classes.size() < 2)
        raise(ErrorCode::invalid_argument, "one-vs-one training needs at least two classes");

    // Each pair gets a disjoint block of sampler streams so batches never
    // share a trajectory across pairs.
    uint64_t pair_ordinal = 0;
    for (size_t a = 0; a < model.classes.size(); ++a) {
        for (size_t b = a + 1; b < model.classes.size(); ++b, ++pair_ordinal) {
            const long class_i = model.classes[a];
            const long class_j = model.classes[b];
            try {
                TrainingSet pair_data = build_pair_dataset(data, class_i, class_j);
                std::vector<TrainStats> pair_stats;
                model.pair_models.emplace(
                    std::make_pair(class_i, class_j),
                    train_ensemble(pair_data, batch_cfg, enc, sampler, boltz, mode,
                                   variable_budget, pair_ordinal << 20,
                                   stats ? &pair_stats : nullptr));
                if (stats) (*stats)[{class_i, class_j}] = std::move(pair_stats);
            } catch (const Error& e) {
                raise(e.code(), "pair (" + std::to_string(class_i) + ", " +
                                    std::to_string(class_j) + "): " + e.what());
            }
        }
    }
    return model;
}

std::map<long, long> ovo_votes(const OvoModel& model, const double* x, long num_features) {
    if (model.pair_models.empty()) raise(ErrorCode::invalid_argument, "model has no pair models");
    std::map<long, long> votes;
    for (long c : model.classes) votes[c] = 0;
    for (const auto& [pair, ensemble] : model.pair_models) {
        const int vote = predict_ensemble(ensemble, x, num_features);
        ++votes[vote > 0 ? pair.first : pair.second];
    }
    return votes;
}

long predict_ovo(const OvoModel& model, const double* x, long num_features) {
    const auto votes = ovo_votes(model, x, num_features);
    long best_class = votes.begin()->first;
    long best_votes = votes.begin()->second;
    for (const auto& [label, count] : votes) {
        if (count > best_votes) {
            best_class = label;
            best_votes = count;
        }
    }
    return best_class;
}

} // namespace qsvm
