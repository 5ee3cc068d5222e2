#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dataset.hpp"
#include "qubo.hpp"
#include "sampler.hpp"

namespace qsvm {

struct BoltzmannConfig {
    /// Boltzmann temperature (the constant k is folded in). Unset means
    /// scale-adaptive: the standard deviation of the sample energies.
    std::optional<double> temperature;
    /// Box bound C in the bias formula. Unset resolves to alpha_max.
    std::optional<double> box_parameter;

    void validate() const;
};

enum class Aggregation { prob, best_only };

Aggregation aggregation_from_name(const std::string& name);
std::string aggregation_name(Aggregation mode);

/// Continuous binary classifier assembled from weighted QUBO solutions.
struct BinaryModel {
    std::vector<double> alphas;
    double bias = 0.0;
    std::vector<double> support_features;  // row-major N x d
    std::vector<int> support_labels;
    long num_samples = 0;
    long num_features = 0;
    EncodingConfig encoding;
    std::string sampler_info;
    double temperature = 0.0;  // resolved value used during aggregation

    const double* support_row(long i) const {
        return support_features.data() + i * num_features;
    }
};

/// Normalized Boltzmann weights over a deduplicated sample set, computed
/// with the minimum energy subtracted so no weight underflows to zero.
/// Lower energy yields strictly higher weight.
std::vector<double> boltzmann_weights(const SampleSet& samples, double temperature);

/// Resolves the scale-adaptive default temperature for a sample set.
double resolve_temperature(const SampleSet& samples, const BoltzmannConfig& cfg);

/// Probability-weighted multipliers: alpha_n = sum_i decode(x_i)_n * P_i.
std::vector<double> weighted_alphas(const SampleSet& samples,
                                    const std::vector<double>& weights,
                                    const EncodingConfig& cfg, long num_samples);

/// Bias from the weighted multipliers:
///   b = sum_n a_n (C - a_n) (y_n - sum_m a_m y_m K(x_m, x_n))
///       / sum_n a_n (C - a_n)
/// Degenerate denominators fall back to averaging the residual over
/// samples with a_n > 0, or 0 when there are none.
double probabilistic_bias(const std::vector<double>& alphas, const std::vector<int>& labels,
                          const std::vector<double>& gram, double box_parameter);

/// Full aggregation: weights, multipliers, bias, packed into a model.
/// best_only replaces the weights with the indicator of the minimum-energy
/// record (ties split uniformly). `gram` may be the cached matrix from the
/// QUBO build; when null it is recomputed.
BinaryModel aggregate(const SampleSet& samples, const TrainingSet& train,
                      const EncodingConfig& enc, const BoltzmannConfig& cfg,
                      Aggregation mode = Aggregation::prob,
                      const std::vector<double>* gram = nullptr);

} // namespace qsvm
