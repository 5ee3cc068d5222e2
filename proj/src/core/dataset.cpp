#include "dataset.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "error.hpp"
#include "rng.hpp"

namespace qsvm {

std::vector<long> Dataset::classes() const {
    std::set<long> distinct(labels.begin(), labels.end());
    return {distinct.begin(), distinct.end()};
}

void validate(const Dataset& data) {
    if (data.num_samples < 1 || data.num_features < 1)
        raise(ErrorCode::invalid_argument, "dataset must have at least one sample and one feature");
    if (data.features.size() != static_cast<size_t>(data.num_samples * data.num_features))
        raise(ErrorCode::invalid_argument, "feature matrix size does not match declared shape");
    if (data.labels.size() != static_cast<size_t>(data.num_samples))
        raise(ErrorCode::invalid_argument, "label count does not match sample count");
    for (double v : data.features)
        if (!std::isfinite(v))
            raise(ErrorCode::invalid_argument, "non-finite feature value");
}

void validate(const TrainingSet& train) {
    if (train.num_samples < 1 || train.num_features < 1)
        raise(ErrorCode::invalid_argument, "training set must have at least one sample and one feature");
    if (train.features.size() != static_cast<size_t>(train.num_samples * train.num_features))
        raise(ErrorCode::invalid_argument, "feature matrix size does not match declared shape");
    if (train.labels.size() != static_cast<size_t>(train.num_samples))
        raise(ErrorCode::invalid_argument, "label count does not match sample count");
    for (int y : train.labels)
        if (y != 1 && y != -1)
            raise(ErrorCode::invalid_argument, "binary labels must be +1 or -1");
    for (double v : train.features)
        if (!std::isfinite(v))
            raise(ErrorCode::invalid_argument, "non-finite feature value");
}

namespace {

std::vector<std::string> split_line(const std::string& line, char delimiter) {
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream stream(line);
    while (std::getline(stream, cell, delimiter)) cells.push_back(cell);
    if (!line.empty() && line.back() == delimiter) cells.emplace_back();
    return cells;
}

double parse_feature(const std::string& cell, long row, long col) {
    const char* begin = cell.c_str();
    char* end = nullptr;
    double value = std::strtod(begin, &end);
    while (end && *end == ' ') ++end;
    if (end == begin || (end && *end != '\0'))
        raise(ErrorCode::parse, "row " + std::to_string(row) + ", column " + std::to_string(col) +
                                    ": cannot parse '" + cell + "' as a number");
    if (!std::isfinite(value))
        raise(ErrorCode::invalid_argument, "row " + std::to_string(row) + ", column " +
                                               std::to_string(col) + ": non-finite feature value");
    return value;
}

long parse_label(const std::string& cell, long row, long col) {
    double value = parse_feature(cell, row, col);
    double rounded = std::nearbyint(value);
    if (std::fabs(value - rounded) > 1e-9)
        raise(ErrorCode::parse, "row " + std::to_string(row) + ", column " + std::to_string(col) +
                                    ": label '" + cell + "' is not an integer");
    return static_cast<long>(rounded);
}

} // namespace

Dataset load_csv(const std::string& path, const CsvOptions& options) {
    std::ifstream file(path);
    if (!file) raise(ErrorCode::io, "cannot open '" + path + "'");

    Dataset data;
    std::string line;
    long row = 0;
    long width = -1;
    bool skip_header = options.has_header;
    while (std::getline(file, line)) {
        ++row;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (skip_header) {
            skip_header = false;
            continue;
        }
        auto cells = split_line(line, options.delimiter);
        if (width < 0) {
            width = static_cast<long>(cells.size());
            if (width < 2)
                raise(ErrorCode::parse, "row " + std::to_string(row) +
                                            ": need at least one feature column and one label column");
        } else if (static_cast<long>(cells.size()) != width) {
            raise(ErrorCode::parse, "row " + std::to_string(row) + ": expected " +
                                        std::to_string(width) + " columns, found " +
                                        std::to_string(cells.size()));
        }
        long label_col = options.label_column < 0 ? width - 1 : options.label_column;
        if (label_col >= width)
            raise(ErrorCode::invalid_argument,
                  "label column " + std::to_string(label_col) + " out of range for " +
                      std::to_string(width) + " columns");
        for (long c = 0; c < width; ++c) {
            if (c == label_col)
                data.labels.push_back(parse_label(cells[c], row, c + 1));
            else
                data.features.push_back(parse_feature(cells[c], row, c + 1));
        }
        ++data.num_samples;
    }
    if (data.num_samples == 0) raise(ErrorCode::parse, "'" + path + "' contains no data rows");
    data.num_features = width - 1;
    validate(data);
    return data;
}

void save_csv(const Dataset& data, const std::string& path, char delimiter) {
    validate(data);
    std::ofstream file(path);
    if (!file) raise(ErrorCode::io, "cannot open '" + path + "' for writing");
    char buffer[64];
    for (long i = 0; i < data.num_samples; ++i) {
        for (long j = 0; j < data.num_features; ++j) {
            std::snprintf(buffer, sizeof buffer, "%.17g", data.row(i)[j]);
            file << buffer << delimiter;
        }
        file << data.labels[i] << '\n';
    }
    if (!file) raise(ErrorCode::io, "write to '" + path + "' failed");
}

namespace {

Dataset take_rows(const Dataset& data, const std::vector<long>& rows) {
    Dataset out;
    out.num_samples = static_cast<long>(rows.size());
    out.num_features = data.num_features;
    out.features.reserve(rows.size() * data.num_features);
    out.labels.reserve(rows.size());
    for (long r : rows) {
        const double* src = data.row(r);
        out.features.insert(out.features.end(), src, src + data.num_features);
        out.labels.push_back(data.labels[r]);
    }
    return out;
}

} // namespace

std::pair<Dataset, Dataset> split(const Dataset& data, double test_fraction,
                                  uint64_t seed, bool stratified) {
    validate(data);
    if (!(test_fraction > 0.0 && test_fraction < 1.0))
        raise(ErrorCode::invalid_argument, "test fraction must lie strictly between 0 and 1");
    const long n = data.num_samples;
    const long n_test = std::llround(test_fraction * static_cast<double>(n));
    if (n_test < 1 || n_test >= n)
        raise(ErrorCode::invalid_argument, "split leaves an empty partition");

    std::vector<long> order(n);
    std::iota(order.begin(), order.end(), 0);
    Rng rng(seed);
    rng.shuffle(order);

    std::vector<long> test_rows, train_rows;
    if (!stratified) {
        test_rows.assign(order.begin(), order.begin() + n_test);
        train_rows.assign(order.begin() + n_test, order.end());
    } else {
        // Per-class quota: floor of the exact share, remainders to the
        // largest fractional parts (ties to the lower label).
        std::map<long, std::vector<long>> by_class;
        for (long r : order) by_class[data.labels[r]].push_back(r);
        std::vector<std::pair<double, long>> remainders;
        std::map<long, long> quota;
        long assigned = 0;
        for (auto& [label, rows] : by_class) {
            double exact = test_fraction * static_cast<double>(rows.size());
            quota[label] = static_cast<long>(std::floor(exact));
            assigned += quota[label];
            remainders.push_back({exact - std::floor(exact), label});
        }
        std::stable_sort(remainders.begin(), remainders.end(),
                         [](const auto& a, const auto& b) { return a.first > b.first; });
        for (long i = 0; i < n_test - assigned && i < static_cast<long>(remainders.size()); ++i)
            ++quota[remainders[i].second];
        for (auto& [label, rows] : by_class) {
            long q = std::min<long>(quota[label], static_cast<long>(rows.size()));
            test_rows.insert(test_rows.end(), rows.begin(), rows.begin() + q);
            train_rows.insert(train_rows.end(), rows.begin() + q, rows.end());
        }
    }
    if (train_rows.empty() || test_rows.empty())
        raise(ErrorCode::invalid_argument, "split leaves an empty partition");
    return {take_rows(data, train_rows), take_rows(data, test_rows)};
}

std::pair<Dataset, Dataset> subsample(const Dataset& data, long n_train, long n_test,
                                      uint64_t seed) {
    validate(data);
    if (n_train < 1 || n_test < 0)
        raise(ErrorCode::invalid_argument, "subsample sizes must be positive");
    if (n_train + n_test > data.num_samples)
        raise(ErrorCode::capacity, "requested " + std::to_string(n_train + n_test) +
                                       " samples from a dataset of " +
                                       std::to_string(data.num_samples));
    std::vector<long> order(data.num_samples);
    std::iota(order.begin(), order.end(), 0);
    Rng rng(seed);
    rng.shuffle(order);
    std::vector<long> train_rows(order.begin(), order.begin() + n_train);
    std::vector<long> test_rows(order.begin() + n_train, order.begin() + n_train + n_test);
    return {take_rows(data, train_rows), take_rows(data, test_rows)};
}

Dataset minmax_scale(const Dataset& reference, const Dataset& input) {
    validate(reference);
    validate(input);
    if (reference.num_features != input.num_features)
        raise(ErrorCode::invalid_argument, "feature dimension mismatch between reference and input");
    const long d = reference.num_features;
    std::vector<double> lo(d, std::numeric_limits<double>::infinity());
    std::vector<double> hi(d, -std::numeric_limits<double>::infinity());
    for (long i = 0; i < reference.num_samples; ++i) {
        const double* x = reference.row(i);
        for (long j = 0; j < d; ++j) {
            lo[j] = std::min(lo[j], x[j]);
            hi[j] = std::max(hi[j], x[j]);
        }
    }
    Dataset out = input;
    for (long i = 0; i < out.num_samples; ++i) {
        double* x = out.features.data() + i * d;
        for (long j = 0; j < d; ++j) {
            double range = hi[j] - lo[j];
            x[j] = range > 0.0 ? (x[j] - lo[j]) / range : 0.0;
        }
    }
    return out;
}

TrainingSet to_training_set(const Dataset& data, long positive_label, long negative_label) {
    validate(data);
    if (positive_label == negative_label)
        raise(ErrorCode::invalid_argument, "positive and negative labels must differ");
    TrainingSet out;
    out.num_features = data.num_features;
    for (long i = 0; i < data.num_samples; ++i) {
        long y = data.labels[i];
        if (y != positive_label && y != negative_label)
            raise(ErrorCode::invalid_argument,
                  "label " + std::to_string(y) + " is neither of the two requested classes");
        const double* src = data.row(i);
        out.features.insert(out.features.end(), src, src + data.num_features);
        out.labels.push_back(y == positive_label ? 1 : -1);
        ++out.num_samples;
    }
    validate(out);
    return out;
}

} // namespace qsvm
