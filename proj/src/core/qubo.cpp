#include "qubo.hpp"

#include <cmath>
#include <cstdio>
#include <cstring>
#include <sstream>

#include <json.hpp>

#include "error.hpp"

namespace qsvm {

void EncodingConfig::validate() const {
    if (base < 2) raise(ErrorCode::invalid_argument, "encoding base must be >= 2");
    if (bits < 1) raise(ErrorCode::invalid_argument, "encoding bits must be >= 1");
    if (!(penalty >= 0.0) || !std::isfinite(penalty))
        raise(ErrorCode::invalid_argument, "penalty must be a nonnegative finite number");
    if (!std::isfinite(alpha_max()) || !(alpha_max() > 0.0))
        raise(ErrorCode::invalid_argument, "encoded multiplier range overflows");
    kernel.validate();
}

double EncodingConfig::alpha_max() const {
    double total = 0.0;
    double place = 1.0;
    for (long k = 0; k < bits; ++k) {
        total += place;
        place *= static_cast<double>(base);
    }
    return total;
}

std::vector<double> EncodingConfig::place_values() const {
    std::vector<double> places(bits);
    double place = 1.0;
    for (long k = 0; k < bits; ++k) {
        places[k] = place;
        place *= static_cast<double>(base);
    }
    return places;
}

namespace {

uint64_t fnv1a_init() { return 0xCBF29CE484222325ULL; }

void fnv1a_feed(uint64_t& hash, const void* bytes, size_t count) {
    const unsigned char* p = static_cast<const unsigned char*>(bytes);
    for (size_t i = 0; i < count; ++i) {
        hash ^= p[i];
        hash *= 0x100000001B3ULL;
    }
}

void fnv1a_feed_double(uint64_t& hash, double value) {
    uint64_t bits;
    std::memcpy(&bits, &value, sizeof bits);
    fnv1a_feed(hash, &bits, sizeof bits);
}

void fnv1a_feed_long(uint64_t& hash, long value) {
    int64_t v = value;
    fnv1a_feed(hash, &v, sizeof v);
}

} // namespace

std::string QuboProblem::digest() const {
    uint64_t hash = fnv1a_init();
    fnv1a_feed_long(hash, num_samples);
    fnv1a_feed_long(hash, num_vars);
    fnv1a_feed_long(hash, encoding.base);
    fnv1a_feed_long(hash, encoding.bits);
    fnv1a_feed_double(hash, encoding.penalty);
    fnv1a_feed_long(hash, static_cast<long>(encoding.kernel.kind));
    fnv1a_feed_double(hash, encoding.kernel.gamma);
    fnv1a_feed_long(hash, encoding.kernel.degree);
    fnv1a_feed_double(hash, encoding.kernel.coef0);
    for (int y : labels) fnv1a_feed_long(hash, y);
    for (long p = 0; p < num_vars; ++p) {
        fnv1a_feed_double(hash, diagonal[p]);
        for (long q = p + 1; q < num_vars; ++q) fnv1a_feed_double(hash, coupling(p, q));
    }
    char buffer[17];
    std::snprintf(buffer, sizeof buffer, "%016llx", static_cast<unsigned long long>(hash));
    return buffer;
}

QuboProblem build_qubo(const TrainingSet& train, const EncodingConfig& cfg,
                       long variable_budget) {
    validate(train);
    cfg.validate();
    const long n = train.num_samples;
    const long bits = cfg.bits;
    const long num_vars = n * bits;
    if (variable_budget > 0 && num_vars > variable_budget)
        raise(ErrorCode::capacity, "problem needs " + std::to_string(num_vars) +
                                       " variables but the budget is " +
                                       std::to_string(variable_budget));

    QuboProblem problem;
    problem.num_samples = n;
    problem.num_vars = num_vars;
    problem.encoding = cfg;
    problem.labels = train.labels;
    problem.gram = compute_gram(train, cfg.kernel);
    problem.diagonal.assign(num_vars, 0.0);
    problem.couplings.assign(static_cast<size_t>(num_vars) * num_vars, 0.0);

    const auto place = cfg.place_values();
    const double xi = cfg.penalty;

    // Negated dual objective plus penalty, expanded over the bit variables.
    // Variable p = bits*n + k carries place value base^k of multiplier n.
    for (long s = 0; s < n; ++s) {
        for (long k = 0; k < bits; ++k) {
            const long p = s * bits + k;
            const double c_p = place[k];
            problem.diagonal[p] =
                -c_p + (0.5 * problem.gram[s * n + s] + xi) * c_p * c_p;
            // Bits of the same multiplier couple through K(x_s, x_s).
            for (long l = k + 1; l < bits; ++l) {
                const long q = s * bits + l;
                const double w =
                    (problem.gram[s * n + s] + 2.0 * xi) * c_p * place[l];
                problem.couplings[p * num_vars + q] = w;
                problem.couplings[q * num_vars + p] = w;
            }
            // Cross-sample couplings.
            for (long t = s + 1; t < n; ++t) {
                const double k_st = problem.gram[s * n + t];
                const double yy = static_cast<double>(train.labels[s] * train.labels[t]);
                for (long l = 0; l < bits; ++l) {
                    const long q = t * bits + l;
                    const double w = (k_st + 2.0 * xi) * yy * c_p * place[l];
                    problem.couplings[p * num_vars + q] = w;
                    problem.couplings[q * num_vars + p] = w;
                }
            }
        }
    }
    for (double v : problem.diagonal)
        if (!std::isfinite(v)) raise(ErrorCode::internal, "non-finite QUBO coefficient");
    for (double v : problem.couplings)
        if (!std::isfinite(v)) raise(ErrorCode::internal, "non-finite QUBO coefficient");
    return problem;
}

double qubo_energy(const QuboProblem& problem, const std::vector<uint8_t>& assignment) {
    if (static_cast<long>(assignment.size()) != problem.num_vars)
        raise(ErrorCode::invalid_argument,
              "assignment has " + std::to_string(assignment.size()) + " bits, expected " +
                  std::to_string(problem.num_vars));
    for (uint8_t bit : assignment)
        if (bit > 1) raise(ErrorCode::invalid_argument, "assignment entries must be 0 or 1");

    // Iterate over set bits only; sparse assignments are the common case.
    std::vector<long> active;
    active.reserve(assignment.size());
    for (long p = 0; p < problem.num_vars; ++p)
        if (assignment[p]) active.push_back(p);

    double energy = 0.0;
    for (size_t i = 0; i < active.size(); ++i) {
        const long p = active[i];
        energy += problem.diagonal[p];
        const double* row = problem.couplings.data() + p * problem.num_vars;
        for (size_t j = i + 1; j < active.size(); ++j) energy += row[active[j]];
    }
    return energy;
}

std::vector<double> decode_alphas(const std::vector<uint8_t>& assignment,
                                  const EncodingConfig& cfg, long num_samples) {
    if (static_cast<long>(assignment.size()) != num_samples * cfg.bits)
        raise(ErrorCode::invalid_argument,
              "assignment has " + std::to_string(assignment.size()) + " bits, expected " +
                  std::to_string(num_samples * cfg.bits));
    const auto place = cfg.place_values();
    std::vector<double> alphas(num_samples, 0.0);
    for (long s = 0; s < num_samples; ++s)
        for (long k = 0; k < cfg.bits; ++k)
            if (assignment[s * cfg.bits + k]) alphas[s] += place[k];
    return alphas;
}

std::string export_qubo_text(const QuboProblem& problem) {
    std::vector<std::pair<std::pair<long, long>, double>> entries;
    for (long p = 0; p < problem.num_vars; ++p) {
        if (problem.diagonal[p] != 0.0) entries.push_back({{p, p}, problem.diagonal[p]});
        for (long q = p + 1; q < problem.num_vars; ++q) {
            double w = problem.coupling(p, q);
            if (w != 0.0) entries.push_back({{p, q}, w});
        }
    }
    std::ostringstream out;
    out << "qubo " << problem.num_vars << ' ' << entries.size() << '\n';
    char buffer[64];
    for (const auto& [pq, value] : entries) {
        std::snprintf(buffer, sizeof buffer, "%.17g", value);
        out << pq.first << ' ' << pq.second << ' ' << buffer << '\n';
    }
    return out.str();
}

std::string export_qubo_metadata(const QuboProblem& problem) {
    nlohmann::json meta;
    meta["format"] = "qsvm-qubo-meta";
    meta["version"] = 1;
    meta["sign_convention"] = kSignConvention;
    meta["num_samples"] = problem.num_samples;
    meta["num_vars"] = problem.num_vars;
    meta["encoding"] = {{"base", problem.encoding.base},
                        {"bits", problem.encoding.bits},
                        {"penalty", problem.encoding.penalty}};
    nlohmann::json kernel;
    kernel["kind"] = kernel_kind_name(problem.encoding.kernel.kind);
    if (problem.encoding.kernel.kind == KernelKind::gaussian)
        kernel["gamma"] = problem.encoding.kernel.gamma;
    if (problem.encoding.kernel.kind == KernelKind::polynomial) {
        kernel["degree"] = problem.encoding.kernel.degree;
        kernel["coef0"] = problem.encoding.kernel.coef0;
    }
    meta["kernel"] = kernel;
    meta["labels"] = problem.labels;
    meta["problem_digest"] = problem.digest();
    return meta.dump(2) + "\n";
}

} // namespace qsvm
