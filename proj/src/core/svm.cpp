#include "svm.hpp"

#include <string>

#include "error.hpp"

namespace qsvm {

double decision_value(const BinaryModel& model, const double* x, long num_features) {
    if (num_features != model.num_features)
        raise(ErrorCode::invalid_argument,
              "input has " + std::to_string(num_features) + " features, model expects " +
                  std::to_string(model.num_features));
    double value = model.bias;
    for (long m = 0; m < model.num_samples; ++m) {
        if (model.alphas[m] == 0.0) continue;
        value += model.alphas[m] * static_cast<double>(model.support_labels[m]) *
                 kernel_eval(model.encoding.kernel, model.support_row(m), x, num_features);
    }
    return value;
}

int predict_binary(const BinaryModel& model, const double* x, long num_features) {
    return decision_value(model, x, num_features) >= 0.0 ? 1 : -1;
}

BinaryModel train_binary(const TrainingSet& train, const EncodingConfig& enc,
                         const SamplerFn& sampler, const BoltzmannConfig& boltz,
                         Aggregation mode, long variable_budget, uint64_t sampler_stream,
                         TrainStats* stats) {
    QuboProblem problem = build_qubo(train, enc, variable_budget);
    SampleSet raw = sampler(problem, sampler_stream);
    SampleSet samples = deduplicate(raw);
    BinaryModel model = aggregate(samples, train, enc, boltz, mode, &problem.gram);
    if (stats) {
        stats->batch_size = train.num_samples;
        stats->num_vars = problem.num_vars;
        stats->raw_samples = static_cast<long>(raw.records.size());
        stats->distinct_samples = static_cast<long>(samples.records.size());
        stats->min_energy = samples.min_energy();
        stats->temperature = model.temperature;
    }
    return model;
}

} // namespace qsvm
