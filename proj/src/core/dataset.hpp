#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace qsvm {

/// Row-major dense feature matrix with integer class labels.
struct Dataset {
    std::vector<double> features;  // num_samples * num_features, row-major
    std::vector<long> labels;
    long num_samples = 0;
    long num_features = 0;

    const double* row(long i) const { return features.data() + i * num_features; }

    /// Sorted distinct labels.
    std::vector<long> classes() const;
};

/// Binary training set with labels restricted to {+1, -1}.
struct TrainingSet {
    std::vector<double> features;  // row-major
    std::vector<int> labels;       // each +1 or -1
    long num_samples = 0;
    long num_features = 0;

    const double* row(long i) const { return features.data() + i * num_features; }
};

struct CsvOptions {
    bool has_header = false;
    long label_column = -1;  // -1 selects the last column
    char delimiter = ',';
};

/// Validates shape, label values and finiteness; throws on violation.
void validate(const Dataset& data);
void validate(const TrainingSet& train);

Dataset load_csv(const std::string& path, const CsvOptions& options = {});
void save_csv(const Dataset& data, const std::string& path, char delimiter = ',');

/// Seeded shuffle, then split with |test| = round(test_fraction * N).
/// Stratified mode keeps per-class test counts within one sample of the
/// class ratio.
std::pair<Dataset, Dataset> split(const Dataset& data, double test_fraction,
                                  uint64_t seed, bool stratified = false);

/// Disjoint seeded subsets of the requested sizes.
std::pair<Dataset, Dataset> subsample(const Dataset& data, long n_train,
                                      long n_test, uint64_t seed);

/// Per-feature [0, 1] scaling fitted on `reference`, applied to `input`.
/// Constant features map to 0.
Dataset minmax_scale(const Dataset& reference, const Dataset& input);

/// Maps a two-class dataset onto {+1, -1} labels.
TrainingSet to_training_set(const Dataset& data, long positive_label,
                            long negative_label);

} // namespace qsvm
