#include "boltzmann.hpp"

#include <algorithm>
#include <cmath>

#include "error.hpp"

namespace qsvm {

void BoltzmannConfig::validate() const {
    if (temperature && !(*temperature > 0.0))
        raise(ErrorCode::invalid_argument, "temperature must be > 0");
    if (box_parameter && !(*box_parameter > 0.0))
        raise(ErrorCode::invalid_argument, "box parameter must be > 0");
}

Aggregation aggregation_from_name(const std::string& name) {
    if (name == "prob") return Aggregation::prob;
    if (name == "best" || name == "best_only") return Aggregation::best_only;
    raise(ErrorCode::invalid_argument, "unknown aggregation '" + name + "'");
}

std::string aggregation_name(Aggregation mode) {
    return mode == Aggregation::prob ? "prob" : "best";
}

std::vector<double> boltzmann_weights(const SampleSet& samples, double temperature) {
    if (samples.records.empty()) raise(ErrorCode::invalid_argument, "sample set is empty");
    if (!samples.deduplicated)
        raise(ErrorCode::invalid_argument, "Boltzmann weighting expects a deduplicated sample set");
    if (!(temperature > 0.0)) raise(ErrorCode::invalid_argument, "temperature must be > 0");

    const double e_min = samples.min_energy();
    std::vector<double> weights(samples.records.size());
    double z = 0.0;
    for (size_t i = 0; i < samples.records.size(); ++i) {
        weights[i] = std::exp(-(samples.records[i].energy - e_min) / temperature);
        z += weights[i];
    }
    for (double& w : weights) w /= z;
    return weights;
}

double resolve_temperature(const SampleSet& samples, const BoltzmannConfig& cfg) {
    cfg.validate();
    if (cfg.temperature) return *cfg.temperature;
    if (samples.records.empty()) raise(ErrorCode::invalid_argument, "sample set is empty");
    double mean = 0.0;
    for (const auto& record : samples.records) mean += record.energy;
    mean /= static_cast<double>(samples.records.size());
    double variance = 0.0;
    for (const auto& record : samples.records) {
        double delta = record.energy - mean;
        variance += delta * delta;
    }
    variance /= static_cast<double>(samples.records.size());
    double sigma = std::sqrt(variance);
    // A degenerate spread means every state is weighted equally no matter
    // the temperature; 1 keeps the arithmetic finite.
    return sigma > 1e-30 ? sigma : 1.0;
}

std::vector<double> weighted_alphas(const SampleSet& samples,
                                    const std::vector<double>& weights,
                                    const EncodingConfig& cfg, long num_samples) {
    if (weights.size() != samples.records.size())
        raise(ErrorCode::invalid_argument, "weight vector does not align with the sample set");
    double total = 0.0;
    for (double w : weights) total += w;
    if (std::fabs(total - 1.0) > 1e-6)
        raise(ErrorCode::invalid_argument, "weights must sum to 1");

    std::vector<double> alphas(num_samples, 0.0);
    for (size_t i = 0; i < samples.records.size(); ++i) {
        if (weights[i] == 0.0) continue;
        const auto decoded = decode_alphas(samples.records[i].assignment, cfg, num_samples);
        for (long n = 0; n < num_samples; ++n) alphas[n] += weights[i] * decoded[n];
    }
    return alphas;
}

double probabilistic_bias(const std::vector<double>& alphas, const std::vector<int>& labels,
                          const std::vector<double>& gram, double box_parameter) {
    const long n = static_cast<long>(alphas.size());
    if (static_cast<long>(labels.size()) != n)
        raise(ErrorCode::invalid_argument, "alphas and labels differ in length");
    if (static_cast<long>(gram.size()) != n * n)
        raise(ErrorCode::invalid_argument, "Gram matrix does not match the sample count");

    // Residual y_n - sum_m alpha_m y_m K(x_m, x_n), reused by the fallback.
    std::vector<double> residual(n);
    for (long i = 0; i < n; ++i) {
        double margin = 0.0;
        for (long m = 0; m < n; ++m)
            margin += alphas[m] * static_cast<double>(labels[m]) * gram[m * n + i];
        residual[i] = static_cast<double>(labels[i]) - margin;
    }

    double numerator = 0.0;
    double denominator = 0.0;
    for (long i = 0; i < n; ++i) {
        const double weight = alphas[i] * (box_parameter - alphas[i]);
        numerator += weight * residual[i];
        denominator += weight;
    }
    if (denominator >= 1e-12) return numerator / denominator;

    // All multipliers pinned to a box edge: average the residual over the
    // active ones instead.
    double sum = 0.0;
    long active = 0;
    for (long i = 0; i < n; ++i) {
        if (alphas[i] > 0.0) {
            sum += residual[i];
            ++active;
        }
    }
    return active > 0 ? sum / static_cast<double>(active) : 0.0;
}

BinaryModel aggregate(const SampleSet& samples, const TrainingSet& train,
                      const EncodingConfig& enc, const BoltzmannConfig& cfg,
                      Aggregation mode, const std::vector<double>* gram) {
    validate(train);
    enc.validate();
    cfg.validate();
    if (samples.records.empty()) raise(ErrorCode::invalid_argument, "sample set is empty");
    if (!samples.deduplicated)
        raise(ErrorCode::invalid_argument, "aggregation expects a deduplicated sample set");

    const double alpha_max = enc.alpha_max();
    const double box = cfg.box_parameter ? *cfg.box_parameter : alpha_max;
    if (box < alpha_max - 1e-9)
        raise(ErrorCode::invalid_argument,
              "box parameter " + std::to_string(box) + " is below the encodable maximum " +
                  std::to_string(alpha_max));

    const double temperature = resolve_temperature(samples, cfg);

    std::vector<double> weights;
    if (mode == Aggregation::prob) {
        weights = boltzmann_weights(samples, temperature);
    } else {
        const double e_min = samples.min_energy();
        long ties = 0;
        for (const auto& record : samples.records)
            if (record.energy == e_min) ++ties;
        weights.assign(samples.records.size(), 0.0);
        for (size_t i = 0; i < samples.records.size(); ++i)
            if (samples.records[i].energy == e_min)
                weights[i] = 1.0 / static_cast<double>(ties);
    }

    BinaryModel model;
    model.alphas = weighted_alphas(samples, weights, enc, train.num_samples);
    model.support_features = train.features;
    model.support_labels = train.labels;
    model.num_samples = train.num_samples;
    model.num_features = train.num_features;
    model.encoding = enc;
    model.sampler_info = samples.sampler_info;
    model.temperature = temperature;

    std::vector<double> local_gram;
    if (gram == nullptr) {
        local_gram = compute_gram(train, enc.kernel);
        gram = &local_gram;
    }
    model.bias = probabilistic_bias(model.alphas, model.support_labels, *gram, box);

    for (double a : model.alphas)
        if (!(a >= -1e-9 && a <= box + 1e-9) || !std::isfinite(a))
            raise(ErrorCode::internal, "aggregated multiplier escaped [0, C]");
    if (!std::isfinite(model.bias)) raise(ErrorCode::internal, "non-finite bias");
    return model;
}

} // namespace qsvm
