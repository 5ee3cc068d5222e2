#pragma once

#include <map>
#include <utility>
#include <vector>

#include "ensemble.hpp"

namespace qsvm {

/// One ensemble per unordered class pair; prediction by majority vote.
struct OvoModel {
    std::vector<long> classes;  // ascending
    std::map<std::pair<long, long>, EnsembleModel> pair_models;  // keys i < j

    long num_features() const {
        return pair_models.empty() ? 0 : pair_models.begin()->second.num_features();
    }
};

/// Sub-dataset of classes i and j with labels mapped i -> +1, j -> -1;
/// original sample order preserved.
TrainingSet build_pair_dataset(const Dataset& data, long class_i, long class_j);

OvoModel train_ovo(const Dataset& data, const EncodingConfig& enc,
                   const BatchConfig& batch_cfg, const SamplerFn& sampler,
                   const BoltzmannConfig& boltz, Aggregation mode = Aggregation::prob,
                   long variable_budget = kDefaultVariableBudget,
                   std::map<std::pair<long, long>, std::vector<TrainStats>>* stats = nullptr);

/// Every pair model casts one vote (positive margin votes the lower class
/// of the pair); vote ties resolve to the lowest class label.
long predict_ovo(const OvoModel& model, const double* x, long num_features);

/// Per-class vote counts for a single input, keyed by class label.
std::map<long, long> ovo_votes(const OvoModel& model, const double* x, long num_features);

} // namespace qsvm
