#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "qubo.hpp"

namespace qsvm {

struct SampleRecord {
    std::vector<uint8_t> assignment;
    double energy = 0.0;
    uint64_t occurrences = 1;
};

struct SampleSet {
    std::vector<SampleRecord> records;
    std::string problem_digest;
    std::string sampler_info;
    bool deduplicated = false;

    double min_energy() const;
};

struct AnnealConfig {
    long num_reads = 100;
    long sweeps_per_read = 1000;
    std::optional<double> t_initial;  // nullopt: 10 * max |coefficient|
    double t_final = 0.01;
    std::string schedule = "geometric";
    uint64_t seed = 0;

    void validate() const;
};

inline constexpr long kDefaultEnumerationCap = 24;

/// Metropolis single-bit-flip simulated annealing under a geometric
/// temperature schedule. Each read draws its own stream from
/// (seed, read index), so results are identical whether reads run serially
/// or across `threads` workers. Records are returned in read order,
/// not deduplicated.
SampleSet anneal(const QuboProblem& problem, const AnnealConfig& cfg, int threads = 0);

/// All 2^num_vars assignments with exact energies; deduplicated by
/// construction. Refuses problems above `max_vars`.
SampleSet enumerate_exact(const QuboProblem& problem, long max_vars = kDefaultEnumerationCap);

/// Merges duplicate assignments, summing occurrences; first-seen order.
SampleSet deduplicate(const SampleSet& samples);

/// JSON document round trip. Import revalidates every record: declared
/// energies must match local recomputation within 1e-6 and the document's
/// problem digest must match `problem`.
std::string export_samples(const SampleSet& samples);
SampleSet import_samples(const QuboProblem& problem, const std::string& document);

/// Anything producing a SampleSet for a problem can drive training; the
/// stream index separates batches and class pairs deterministically.
using SamplerFn = std::function<SampleSet(const QuboProblem&, uint64_t stream)>;

SamplerFn make_anneal_sampler(const AnnealConfig& cfg, int threads = 0);
SamplerFn make_exact_sampler(long max_vars = kDefaultEnumerationCap);

/// Sampler that replays one pre-validated sample set; rejects any problem
/// whose digest differs.
SamplerFn make_replay_sampler(SampleSet samples);

} // namespace qsvm
