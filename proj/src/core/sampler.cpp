#include "sampler.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>
#include <sstream>
#include <thread>
#include <unordered_map>

#include <json.hpp>

#include "error.hpp"
#include "rng.hpp"

namespace qsvm {

double SampleSet::min_energy() const {
    if (records.empty()) raise(ErrorCode::invalid_argument, "sample set is empty");
    double best = records.front().energy;
    for (const auto& record : records) best = std::min(best, record.energy);
    return best;
}

void AnnealConfig::validate() const {
    if (num_reads < 1) raise(ErrorCode::invalid_argument, "num_reads must be >= 1");
    if (sweeps_per_read < 1) raise(ErrorCode::invalid_argument, "sweeps_per_read must be >= 1");
    if (!(t_final > 0.0)) raise(ErrorCode::invalid_argument, "t_final must be > 0");
    if (t_initial && !(*t_initial > t_final))
        raise(ErrorCode::invalid_argument, "t_initial must exceed t_final");
    if (schedule != "geometric")
        raise(ErrorCode::invalid_argument, "unknown schedule '" + schedule + "'");
}

namespace {

double resolve_t_initial(const QuboProblem& problem, const AnnealConfig& cfg) {
    if (cfg.t_initial) return *cfg.t_initial;
    double scale = 0.0;
    for (double v : problem.diagonal) scale = std::max(scale, std::fabs(v));
    for (long p = 0; p < problem.num_vars; ++p)
        for (long q = p + 1; q < problem.num_vars; ++q)
            scale = std::max(scale, std::fabs(problem.coupling(p, q)));
    double t0 = 10.0 * scale;
    return t0 > cfg.t_final ? t0 : cfg.t_final * 10.0;
}

std::string format_double(double value) {
    char buffer[64];
    std::snprintf(buffer, sizeof buffer, "%.17g", value);
    return buffer;
}

// One annealing read with its own RNG stream. Local fields
// h[i] = diag[i] + sum_{j != i} S[i][j] a[j] make the flip test O(1).
SampleRecord run_read(const QuboProblem& problem, const AnnealConfig& cfg,
                      const std::vector<double>& temperatures, uint64_t read_index) {
    const long n = problem.num_vars;
    Rng rng = Rng::derive(cfg.seed, read_index);

    std::vector<uint8_t> bits(n);
    for (long i = 0; i < n; ++i) bits[i] = rng.next_bit() ? 1 : 0;

    std::vector<double> field(n);
    for (long i = 0; i < n; ++i) {
        double h = problem.diagonal[i];
        const double* row = problem.couplings.data() + i * n;
        for (long j = 0; j < n; ++j)
            if (bits[j]) h += row[j];
        field[i] = h;
    }

    std::vector<long> order(n);
    std::iota(order.begin(), order.end(), 0);

    for (double temperature : temperatures) {
        rng.shuffle(order);
        for (long i : order) {
            const double delta = (1 - 2 * static_cast<int>(bits[i])) * field[i];
            if (delta > 0.0 && rng.next_double() >= std::exp(-delta / temperature)) continue;
            const double step = bits[i] ? -1.0 : 1.0;
            bits[i] ^= 1;
            const double* row = problem.couplings.data() + i * n;
            for (long j = 0; j < n; ++j) field[j] += step * row[j];
            field[i] -= step * row[i];  // couplings diagonal is zero, kept for clarity
        }
    }

    SampleRecord record;
    record.energy = qubo_energy(problem, bits);
    record.assignment = std::move(bits);
    record.occurrences = 1;
    return record;
}

} // namespace

SampleSet anneal(const QuboProblem& problem, const AnnealConfig& cfg, int threads) {
    cfg.validate();
    if (problem.num_vars < 1) raise(ErrorCode::invalid_argument, "problem has no variables");

    const double t0 = resolve_t_initial(problem, cfg);
    const long sweeps = cfg.sweeps_per_read;
    std::vector<double> temperatures(sweeps);
    if (sweeps == 1) {
        temperatures[0] = t0;
    } else {
        const double ratio = std::pow(cfg.t_final / t0, 1.0 / static_cast<double>(sweeps - 1));
        double t = t0;
        for (long s = 0; s < sweeps; ++s) {
            temperatures[s] = t;
            t *= ratio;
        }
    }

    SampleSet samples;
    samples.records.resize(cfg.num_reads);
    samples.problem_digest = problem.digest();
    samples.deduplicated = false;

    int workers = threads > 0 ? threads : static_cast<int>(std::thread::hardware_concurrency());
    workers = std::max(1, std::min<int>(workers, static_cast<int>(cfg.num_reads)));
    if (workers == 1) {
        for (long r = 0; r < cfg.num_reads; ++r)
            samples.records[r] = run_read(problem, cfg, temperatures, static_cast<uint64_t>(r));
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (int w = 0; w < workers; ++w) {
            pool.emplace_back([&, w] {
                for (long r = w; r < cfg.num_reads; r += workers)
                    samples.records[r] =
                        run_read(problem, cfg, temperatures, static_cast<uint64_t>(r));
            });
        }
        for (auto& worker : pool) worker.join();
    }

    std::ostringstream info;
    info << "sa(reads=" << cfg.num_reads << ",sweeps=" << sweeps << ",t0=" << format_double(t0)
         << ",t1=" << format_double(cfg.t_final) << ",schedule=" << cfg.schedule
         << ",seed=" << cfg.seed << ")";
    samples.sampler_info = info.str();
    return samples;
}

SampleSet enumerate_exact(const QuboProblem& problem, long max_vars) {
    const long n = problem.num_vars;
    if (n < 1) raise(ErrorCode::invalid_argument, "problem has no variables");
    if (n > max_vars)
        raise(ErrorCode::capacity, "enumeration over " + std::to_string(n) +
                                       " variables exceeds the cap of " + std::to_string(max_vars));

    SampleSet samples;
    samples.problem_digest = problem.digest();
    samples.sampler_info = "exact(num_vars=" + std::to_string(n) + ")";
    samples.deduplicated = true;

    const uint64_t count = 1ULL << n;
    samples.records.reserve(count);

    // Gray-code walk: consecutive states differ in one bit, so the
    // assignment buffer is updated in O(1). Energies are evaluated exactly
    // per state.
    std::vector<uint8_t> bits(n, 0);
    SampleRecord first;
    first.assignment = bits;
    first.energy = 0.0;
    samples.records.push_back(std::move(first));
    for (uint64_t i = 1; i < count; ++i) {
        const int flip = std::countr_zero(i);
        bits[flip] ^= 1;
        SampleRecord record;
        record.assignment = bits;
        record.energy = qubo_energy(problem, bits);
        samples.records.push_back(std::move(record));
    }
    return samples;
}

SampleSet deduplicate(const SampleSet& samples) {
    if (samples.records.empty()) raise(ErrorCode::invalid_argument, "sample set is empty");
    SampleSet out;
    out.problem_digest = samples.problem_digest;
    out.sampler_info = samples.sampler_info;
    out.deduplicated = true;

    std::unordered_map<std::string, size_t> index;
    index.reserve(samples.records.size());
    for (const auto& record : samples.records) {
        std::string key(record.assignment.begin(), record.assignment.end());
        auto [it, inserted] = index.try_emplace(key, out.records.size());
        if (inserted)
            out.records.push_back(record);
        else
            out.records[it->second].occurrences += record.occurrences;
    }
    return out;
}

std::string export_samples(const SampleSet& samples) {
    nlohmann::json doc;
    doc["format"] = "qsvm-samples";
    doc["version"] = 1;
    doc["problem_digest"] = samples.problem_digest;
    doc["sampler_info"] = samples.sampler_info;
    doc["deduplicated"] = samples.deduplicated;
    nlohmann::json records = nlohmann::json::array();
    for (const auto& record : samples.records) {
        std::string assignment(record.assignment.size(), '0');
        for (size_t i = 0; i < record.assignment.size(); ++i)
            if (record.assignment[i]) assignment[i] = '1';
        records.push_back({{"assignment", assignment},
                           {"energy", record.energy},
                           {"occurrences", record.occurrences}});
    }
    doc["records"] = std::move(records);
    return doc.dump(2) + "\n";
}

SampleSet import_samples(const QuboProblem& problem, const std::string& document) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(document);
    } catch (const nlohmann::json::exception& e) {
        raise(ErrorCode::parse, std::string("sample document is not valid JSON: ") + e.what());
    }

    SampleSet samples;
    try {
        samples.problem_digest = doc.at("problem_digest").get<std::string>();
        samples.sampler_info = doc.at("sampler_info").get<std::string>();
        samples.deduplicated = doc.value("deduplicated", false);
        if (!doc.at("records").is_array() || doc.at("records").empty())
            raise(ErrorCode::parse, "sample document has no records");
        for (const auto& entry : doc.at("records")) {
            SampleRecord record;
            const auto assignment = entry.at("assignment").get<std::string>();
            record.assignment.reserve(assignment.size());
            for (char c : assignment) {
                if (c != '0' && c != '1')
                    raise(ErrorCode::parse, "assignment strings must contain only '0' and '1'");
                record.assignment.push_back(c == '1' ? 1 : 0);
            }
            record.energy = entry.at("energy").get<double>();
            record.occurrences = entry.value("occurrences", uint64_t{1});
            if (record.occurrences < 1)
                raise(ErrorCode::parse, "record occurrences must be >= 1");
            samples.records.push_back(std::move(record));
        }
    } catch (const nlohmann::json::exception& e) {
        raise(ErrorCode::parse, std::string("malformed sample document: ") + e.what());
    }

    const std::string expected = problem.digest();
    if (samples.problem_digest != expected)
        raise(ErrorCode::provenance, "sample set digest " + samples.problem_digest +
                                         " does not match problem digest " + expected);

    for (size_t i = 0; i < samples.records.size(); ++i) {
        auto& record = samples.records[i];
        if (static_cast<long>(record.assignment.size()) != problem.num_vars)
            raise(ErrorCode::parse, "record " + std::to_string(i) + ": assignment has " +
                                        std::to_string(record.assignment.size()) +
                                        " bits, expected " + std::to_string(problem.num_vars));
        const double local = qubo_energy(problem, record.assignment);
        if (std::fabs(local - record.energy) > 1e-6)
            raise(ErrorCode::integrity,
                  "record " + std::to_string(i) + ": declared energy " +
                      format_double(record.energy) + " differs from recomputed " +
                      format_double(local));
        record.energy = local;
    }

    if (samples.deduplicated) {
        std::unordered_map<std::string, size_t> seen;
        for (size_t i = 0; i < samples.records.size(); ++i) {
            std::string key(samples.records[i].assignment.begin(),
                            samples.records[i].assignment.end());
            if (!seen.try_emplace(key, i).second)
                raise(ErrorCode::integrity,
                      "document claims deduplication but record " + std::to_string(i) +
                          " repeats an earlier assignment");
        }
    }
    return samples;
}

SamplerFn make_anneal_sampler(const AnnealConfig& cfg, int threads) {
    cfg.validate();
    return [cfg, threads](const QuboProblem& problem, uint64_t stream) {
        // Stream 0 keeps the user's seed; later batches and class pairs get
        // derived seeds so they explore independent trajectories.
        AnnealConfig local = cfg;
        if (stream != 0) {
            uint64_t mix = cfg.seed;
            local.seed = splitmix64_next(mix) ^ (0x9E3779B97F4A7C15ULL * (stream + 1));
        }
        return anneal(problem, local, threads);
    };
}

SamplerFn make_exact_sampler(long max_vars) {
    return [max_vars](const QuboProblem& problem, uint64_t) {
        return enumerate_exact(problem, max_vars);
    };
}

SamplerFn make_replay_sampler(SampleSet samples) {
    return [samples = std::move(samples)](const QuboProblem& problem, uint64_t) {
        if (samples.problem_digest != problem.digest())
            raise(ErrorCode::provenance,
                  "replayed sample set does not belong to this problem");
        return samples;
    };
}

} // namespace qsvm
