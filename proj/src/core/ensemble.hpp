#pragma once

#include <cstdint>
#include <vector>

#include "svm.hpp"

namespace qsvm {

struct BatchConfig {
    long batch_size = 0;  // 0: resolved to floor(budget / bits) at train time
    uint64_t shuffle_seed = 0;
    bool stratified = false;
};

/// One trained model per batch; prediction averages the members' signed
/// votes.
struct EnsembleModel {
    std::vector<BinaryModel> members;
    BatchConfig batch_config;

    long num_features() const { return members.empty() ? 0 : members.front().num_features; }
};

/// Splits into ceil(N / batch_size) batches after a seeded shuffle.
/// Plain mode chunks the shuffled order, so only the last batch can be
/// short; stratified mode deals label-sorted samples round-robin, keeping
/// per-batch label counts within one of each other.
std::vector<TrainingSet> partition(const TrainingSet& train, const BatchConfig& cfg);

/// Trains one member per batch, in batch order. Sampler streams are offset
/// by `stream_base + batch index`.
EnsembleModel train_ensemble(const TrainingSet& train, const BatchConfig& batch_cfg,
                             const EncodingConfig& enc, const SamplerFn& sampler,
                             const BoltzmannConfig& boltz,
                             Aggregation mode = Aggregation::prob,
                             long variable_budget = kDefaultVariableBudget,
                             uint64_t stream_base = 0,
                             std::vector<TrainStats>* stats = nullptr);

/// Mean of member votes, in [-1, 1].
double ensemble_margin(const EnsembleModel& model, const double* x, long num_features);

/// Sign of the margin with the 0 -> +1 tie rule.
int predict_ensemble(const EnsembleModel& model, const double* x, long num_features);

} // namespace qsvm
