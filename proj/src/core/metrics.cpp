#include "metrics.hpp"

#include <algorithm>
#include <set>

#include "error.hpp"

namespace qsvm {

namespace {

void check_lengths(const std::vector<long>& y_true, const std::vector<long>& y_pred) {
    if (y_true.empty()) raise(ErrorCode::invalid_argument, "empty label vectors");
    if (y_true.size() != y_pred.size())
        raise(ErrorCode::invalid_argument, "label vectors differ in length");
}

struct Counts {
    long tp = 0, fp = 0, fn = 0;
};

Counts count_for_class(const std::vector<long>& y_true, const std::vector<long>& y_pred,
                       long positive) {
    Counts c;
    for (size_t i = 0; i < y_true.size(); ++i) {
        const bool truth = y_true[i] == positive;
        const bool guess = y_pred[i] == positive;
        if (truth && guess) ++c.tp;
        if (!truth && guess) ++c.fp;
        if (truth && !guess) ++c.fn;
    }
    return c;
}

} // namespace

MetricsReport binary_metrics(const std::vector<long>& y_true, const std::vector<long>& y_pred,
                             long positive_class) {
    check_lengths(y_true, y_pred);
    MetricsReport report;
    report.positive_class = positive_class;

    long correct = 0;
    for (size_t i = 0; i < y_true.size(); ++i)
        if (y_true[i] == y_pred[i]) ++correct;
    report.accuracy = static_cast<double>(correct) / static_cast<double>(y_true.size());

    const Counts c = count_for_class(y_true, y_pred, positive_class);
    if (c.tp + c.fp > 0)
        report.precision = static_cast<double>(c.tp) / static_cast<double>(c.tp + c.fp);
    else
        report.zero_division.push_back("precision");
    if (c.tp + c.fn > 0)
        report.recall = static_cast<double>(c.tp) / static_cast<double>(c.tp + c.fn);
    else
        report.zero_division.push_back("recall");
    if (report.precision + report.recall > 0.0)
        report.f1 = 2.0 * report.precision * report.recall / (report.precision + report.recall);
    else
        report.zero_division.push_back("f1");
    return report;
}

MetricsReport macro_metrics(const std::vector<long>& y_true, const std::vector<long>& y_pred) {
    check_lengths(y_true, y_pred);
    MetricsReport report;
    report.macro = true;

    long correct = 0;
    for (size_t i = 0; i < y_true.size(); ++i)
        if (y_true[i] == y_pred[i]) ++correct;
    report.accuracy = static_cast<double>(correct) / static_cast<double>(y_true.size());

    std::set<long> classes(y_true.begin(), y_true.end());
    classes.insert(y_pred.begin(), y_pred.end());

    double precision_sum = 0.0, recall_sum = 0.0, f1_sum = 0.0;
    bool hit_zero = false;
    for (long label : classes) {
        const Counts c = count_for_class(y_true, y_pred, label);
        double precision = 0.0, recall = 0.0;
        if (c.tp + c.fp > 0)
            precision = static_cast<double>(c.tp) / static_cast<double>(c.tp + c.fp);
        else
            hit_zero = true;
        if (c.tp + c.fn > 0)
            recall = static_cast<double>(c.tp) / static_cast<double>(c.tp + c.fn);
        else
            hit_zero = true;
        precision_sum += precision;
        recall_sum += recall;
        f1_sum += precision + recall > 0.0 ? 2.0 * precision * recall / (precision + recall) : 0.0;
    }
    const double k = static_cast<double>(classes.size());
    report.precision = precision_sum / k;
    report.recall = recall_sum / k;
    report.f1 = f1_sum / k;
    if (hit_zero) report.zero_division.push_back("per-class");
    return report;
}

} // namespace qsvm
