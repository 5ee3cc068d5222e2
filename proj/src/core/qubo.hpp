#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "dataset.hpp"
#include "kernel.hpp"

namespace qsvm {

/// Default cap on QUBO variables per problem, standing in for the qubit
/// count of the target annealing hardware.
inline constexpr long kDefaultVariableBudget = 550;

/// Fixed-point binary encoding of each dual multiplier:
///     alpha_n = sum_{k=0}^{bits-1} base^k * a_{bits*n + k}
struct EncodingConfig {
    long base = 2;
    long bits = 2;
    double penalty = 0.0;  // weight of the squared equality-constraint violation
    KernelSpec kernel;

    void validate() const;

    /// Largest encodable multiplier, sum_k base^k.
    double alpha_max() const;

    /// base^k for k in [0, bits).
    std::vector<double> place_values() const;
};

/// Minimization QUBO over num_vars = N * bits binary variables.
///
/// Sign convention: the stored quadratic form is the negated SVM dual
/// objective plus the constraint penalty, so lower energy means a better
/// solution ("minimize-negated-dual"). Linear terms sit on the diagonal;
/// off-diagonal couplings are kept in a full symmetric matrix and exported
/// folded into the upper triangle.
struct QuboProblem {
    long num_samples = 0;
    long num_vars = 0;
    EncodingConfig encoding;
    std::vector<int> labels;         // copy of the training labels
    std::vector<double> gram;        // N x N kernel Gram matrix
    std::vector<double> diagonal;    // linear terms, length num_vars
    std::vector<double> couplings;   // symmetric num_vars x num_vars, zero diagonal

    double coupling(long p, long q) const { return couplings[p * num_vars + q]; }

    /// Upper-triangular coefficient, diagonal included.
    double coefficient(long p, long q) const {
        return p == q ? diagonal[p] : coupling(p, q);
    }

    /// Content hash used to tie sample sets to the problem they solve.
    std::string digest() const;
};

inline constexpr char kSignConvention[] = "minimize-negated-dual";

QuboProblem build_qubo(const TrainingSet& train, const EncodingConfig& cfg,
                       long variable_budget = kDefaultVariableBudget);

/// Energy of a binary assignment under the upper-triangular convention:
/// sum_p Q_pp a_p + sum_{p<q} Q_pq a_p a_q.
double qubo_energy(const QuboProblem& problem, const std::vector<uint8_t>& assignment);

/// Decodes a full assignment into the N continuous multipliers.
std::vector<double> decode_alphas(const std::vector<uint8_t>& assignment,
                                  const EncodingConfig& cfg, long num_samples);

/// Line-oriented text export: header "qubo <num_vars> <num_nonzero>", then
/// one "p q value" line per nonzero upper-triangular entry (17 significant
/// digits). The companion metadata document is JSON.
std::string export_qubo_text(const QuboProblem& problem);
std::string export_qubo_metadata(const QuboProblem& problem);

} // namespace qsvm
