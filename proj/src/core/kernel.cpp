#include "kernel.hpp"

#include <cmath>

#include "error.hpp"

namespace qsvm {

void KernelSpec::validate() const {
    switch (kind) {
        case KernelKind::gaussian:
            if (!(gamma > 0.0) || !std::isfinite(gamma))
                raise(ErrorCode::invalid_argument, "gaussian kernel requires gamma > 0");
            break;
        case KernelKind::polynomial:
            if (degree < 1)
                raise(ErrorCode::invalid_argument, "polynomial kernel requires degree >= 1");
            if (!std::isfinite(coef0))
                raise(ErrorCode::invalid_argument, "polynomial coef0 must be finite");
            break;
        case KernelKind::linear:
            break;
    }
}

std::string kernel_kind_name(KernelKind kind) {
    switch (kind) {
        case KernelKind::gaussian: return "gaussian";
        case KernelKind::linear: return "linear";
        case KernelKind::polynomial: return "polynomial";
    }
    return "gaussian";
}

KernelKind kernel_kind_from_name(const std::string& name) {
    if (name == "gaussian" || name == "rbf") return KernelKind::gaussian;
    if (name == "linear") return KernelKind::linear;
    if (name == "polynomial" || name == "poly") return KernelKind::polynomial;
    raise(ErrorCode::invalid_argument, "unknown kernel '" + name + "'");
}

double kernel_eval(const KernelSpec& spec, const double* x, const double* y, long d) {
    switch (spec.kind) {
        case KernelKind::gaussian: {
            double dist2 = 0.0;
            for (long j = 0; j < d; ++j) {
                double delta = x[j] - y[j];
                dist2 += delta * delta;
            }
            return std::exp(-spec.gamma * dist2);
        }
        case KernelKind::linear: {
            double dot = 0.0;
            for (long j = 0; j < d; ++j) dot += x[j] * y[j];
            return dot;
        }
        case KernelKind::polynomial: {
            double dot = 0.0;
            for (long j = 0; j < d; ++j) dot += x[j] * y[j];
            return std::pow(dot + spec.coef0, spec.degree);
        }
    }
    return 0.0;
}

std::vector<double> compute_gram(const TrainingSet& train, const KernelSpec& spec) {
    validate(train);
    spec.validate();
    const long n = train.num_samples;
    const long d = train.num_features;
    std::vector<double> gram(static_cast<size_t>(n) * n);
    for (long i = 0; i < n; ++i) {
        // Diagonal first: the gaussian case must be exactly 1.
        gram[i * n + i] = spec.kind == KernelKind::gaussian
                              ? 1.0
                              : kernel_eval(spec, train.row(i), train.row(i), d);
        for (long j = i + 1; j < n; ++j) {
            double value = kernel_eval(spec, train.row(i), train.row(j), d);
            gram[i * n + j] = value;
            gram[j * n + i] = value;
        }
    }
    return gram;
}

} // namespace qsvm
