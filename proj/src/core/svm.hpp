#pragma once

#include "boltzmann.hpp"
#include "dataset.hpp"
#include "sampler.hpp"

namespace qsvm {

/// Per-batch training diagnostics surfaced into reports.
struct TrainStats {
    long batch_size = 0;
    long num_vars = 0;
    long raw_samples = 0;       // records before deduplication
    long distinct_samples = 0;  // records after deduplication
    double min_energy = 0.0;
    double temperature = 0.0;   // resolved aggregation temperature
};

/// sum_m alpha_m y_m K(x_m, x) + b.
double decision_value(const BinaryModel& model, const double* x, long num_features);

/// Sign of the decision value, with sign(0) = +1.
int predict_binary(const BinaryModel& model, const double* x, long num_features);

/// Single-batch training: build the QUBO, sample it, deduplicate and
/// aggregate. Deterministic for a fixed sampler stream.
BinaryModel train_binary(const TrainingSet& train, const EncodingConfig& enc,
                         const SamplerFn& sampler, const BoltzmannConfig& boltz,
                         Aggregation mode = Aggregation::prob,
                         long variable_budget = kDefaultVariableBudget,
                         uint64_t sampler_stream = 0, TrainStats* stats = nullptr);

} // namespace qsvm
