#include "ensemble.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "error.hpp"
#include "rng.hpp"

namespace qsvm {

namespace {

TrainingSet take_rows(const TrainingSet& train, const std::vector<long>& rows) {
    TrainingSet out;
    out.num_features = train.num_features;
    out.num_samples = static_cast<long>(rows.size());
    out.features.reserve(rows.size() * train.num_features);
    out.labels.reserve(rows.size());
    for (long r : rows) {
        const double* src = train.row(r);
        out.features.insert(out.features.end(), src, src + train.num_features);
        out.labels.push_back(train.labels[r]);
    }
    return out;
}

} // namespace

std::vector<TrainingSet> partition(const TrainingSet& train, const BatchConfig& cfg) {
    validate(train);
    if (cfg.batch_size < 1) raise(ErrorCode::invalid_argument, "batch size must be >= 1");

    const long n = train.num_samples;
    const long num_batches = (n + cfg.batch_size - 1) / cfg.batch_size;

    std::vector<long> order(n);
    std::iota(order.begin(), order.end(), 0);
    Rng rng(cfg.shuffle_seed);
    rng.shuffle(order);

    std::vector<std::vector<long>> buckets(num_batches);
    if (!cfg.stratified) {
        for (long i = 0; i < n; ++i) buckets[i / cfg.batch_size].push_back(order[i]);
    } else {
        // Stable partition of the shuffled order by label, then round-robin
        // dealing: batch sizes stay within one of each other and so do the
        // per-batch label counts.
        std::vector<long> sorted;
        sorted.reserve(n);
        for (long r : order)
            if (train.labels[r] == 1) sorted.push_back(r);
        for (long r : order)
            if (train.labels[r] == -1) sorted.push_back(r);
        for (long i = 0; i < n; ++i) buckets[i % num_batches].push_back(sorted[i]);
    }

    std::vector<TrainingSet> batches;
    batches.reserve(num_batches);
    for (const auto& bucket : buckets) batches.push_back(take_rows(train, bucket));
    return batches;
}

EnsembleModel train_ensemble(const TrainingSet& train, const BatchConfig& batch_cfg,
                             const EncodingConfig& enc, const SamplerFn& sampler,
                             const BoltzmannConfig& boltz, Aggregation mode,
                             long variable_budget, uint64_t stream_base,
                             std::vector<TrainStats>* stats) {
    validate(train);
    enc.validate();

    BatchConfig cfg = batch_cfg;
    if (cfg.batch_size == 0) cfg.batch_size = std::max<long>(1, variable_budget / enc.bits);
    if (variable_budget > 0 && cfg.batch_size * enc.bits > variable_budget)
        raise(ErrorCode::capacity,
              "batch size " + std::to_string(cfg.batch_size) + " needs " +
                  std::to_string(cfg.batch_size * enc.bits) + " variables but the budget is " +
                  std::to_string(variable_budget));

    EnsembleModel model;
    model.batch_config = cfg;
    const auto batches = partition(train, cfg);
    model.members.reserve(batches.size());
    for (size_t j = 0; j < batches.size(); ++j) {
        try {
            TrainStats batch_stats;
            model.members.push_back(train_binary(batches[j], enc, sampler, boltz, mode,
                                                 variable_budget,
                                                 stream_base + static_cast<uint64_t>(j),
                                                 stats ? &batch_stats : nullptr));
            if (stats) stats->push_back(batch_stats);
        } catch (const Error& e) {
            raise(e.code(), "batch " + std::to_string(j) + ": " + e.what());
        }
    }
    return model;
}

double ensemble_margin(const EnsembleModel& model, const double* x, long num_features) {
    if (model.members.empty()) raise(ErrorCode::invalid_argument, "ensemble has no members");
    double votes = 0.0;
    for (const auto& member : model.members)
        votes += static_cast<double>(predict_binary(member, x, num_features));
    return votes / static_cast<double>(model.members.size());
}

int predict_ensemble(const EnsembleModel& model, const double* x, long num_features) {
    return ensemble_margin(model, x, num_features) >= 0.0 ? 1 : -1;
}

} // namespace qsvm
