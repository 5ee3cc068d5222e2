#pragma once

#include <string>
#include <vector>

#include "dataset.hpp"

namespace qsvm {

enum class KernelKind { gaussian, linear, polynomial };

struct KernelSpec {
    KernelKind kind = KernelKind::gaussian;
    double gamma = 1.0;   // gaussian: exp(-gamma * ||x - y||^2)
    int degree = 3;       // polynomial: (x.y + coef0)^degree
    double coef0 = 0.0;

    void validate() const;
};

std::string kernel_kind_name(KernelKind kind);
KernelKind kernel_kind_from_name(const std::string& name);

/// Single kernel evaluation k(x, y) for d-dimensional points.
double kernel_eval(const KernelSpec& spec, const double* x, const double* y, long d);

/// Dense symmetric N x N Gram matrix over the training samples.
/// Gaussian diagonals are exactly 1.
std::vector<double> compute_gram(const TrainingSet& train, const KernelSpec& spec);

} // namespace qsvm
