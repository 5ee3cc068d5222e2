#pragma once

#include <string>
#include <vector>

namespace qsvm {

struct MetricsReport {
    double accuracy = 0.0;
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;
    /// Metrics whose denominator was zero and were reported as 0.
    std::vector<std::string> zero_division;
    bool macro = false;
    long positive_class = 1;  // meaningful in binary mode only
};

/// Binary metrics relative to `positive_class`. Zero denominators yield 0
/// and are flagged instead of raising.
MetricsReport binary_metrics(const std::vector<long>& y_true, const std::vector<long>& y_pred,
                             long positive_class = 1);

/// Macro-averaged metrics over the union of classes seen in either vector.
MetricsReport macro_metrics(const std::vector<long>& y_true, const std::vector<long>& y_pred);

} // namespace qsvm
