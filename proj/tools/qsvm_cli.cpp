// qsvm command line: train / predict / evaluate / export-qubo /
// import-samples / benchmark, all through the C API of libqsvm.
//
// Exit codes: 0 success, 2 usage or input error, 3 data integrity or
// provenance error, 4 capacity (variable budget) error.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qsvm/qsvm.h"

using nlohmann::json;

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitIntegrity = 3;
constexpr int kExitCapacity = 4;

int exit_code_of(qsvm_status status) {
    switch (status) {
        case QSVM_OK: return 0;
        case QSVM_ERROR_INVALID_ARGUMENT:
        case QSVM_ERROR_IO:
        case QSVM_ERROR_PARSE: return kExitUsage;
        case QSVM_ERROR_INTEGRITY:
        case QSVM_ERROR_PROVENANCE: return kExitIntegrity;
        case QSVM_ERROR_CAPACITY: return kExitCapacity;
        case QSVM_ERROR_INTERNAL: return 1;
    }
    return 1;
}

struct CliError {
    int code;
};

// Prints the library's message and aborts the command.
void check(qsvm_status status) {
    if (status == QSVM_OK) return;
    std::cerr << "error: " << qsvm_last_error() << "\n";
    throw CliError{exit_code_of(status)};
}

[[noreturn]] void fail(const std::string& message, int code = kExitUsage) {
    std::cerr << "error: " << message << "\n";
    throw CliError{code};
}

std::string take_string(char* text) {
    std::string out = text ? text : "";
    qsvm_string_free(text);
    return out;
}

using DatasetPtr = std::unique_ptr<qsvm_dataset, decltype(&qsvm_dataset_free)>;
using ModelPtr = std::unique_ptr<qsvm_model, decltype(&qsvm_model_free)>;
using QuboPtr = std::unique_ptr<qsvm_qubo, decltype(&qsvm_qubo_free)>;
using SamplesPtr = std::unique_ptr<qsvm_samples, decltype(&qsvm_samples_free)>;

DatasetPtr wrap(qsvm_dataset* p) { return {p, &qsvm_dataset_free}; }
ModelPtr wrap(qsvm_model* p) { return {p, &qsvm_model_free}; }
QuboPtr wrap(qsvm_qubo* p) { return {p, &qsvm_qubo_free}; }
SamplesPtr wrap(qsvm_samples* p) { return {p, &qsvm_samples_free}; }

double elapsed_ms(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
        .count();
}

void write_text(const std::string& path, const std::string& content) {
    std::FILE* file = std::fopen(path.c_str(), "wb");
    if (!file) fail("cannot open '" + path + "' for writing");
    std::fwrite(content.data(), 1, content.size(), file);
    std::fclose(file);
}

// ---- shared option groups ------------------------------------------------

struct DataOpts {
    std::string path;
    long label_column = -1;
    bool has_header = false;
    std::string delimiter = ",";

    void add_to(CLI::App* cmd, bool required = true) {
        auto* opt = cmd->add_option("--data", path, "input CSV dataset");
        if (required) opt->required();
        cmd->add_option("--label-column", label_column,
                        "label column index, -1 for the last column");
        cmd->add_flag("--has-header", has_header, "skip the first CSV line");
        cmd->add_option("--delimiter", delimiter, "CSV field delimiter");
    }

    DatasetPtr load() const {
        json options = {{"has_header", has_header},
                        {"label_column", label_column},
                        {"delimiter", delimiter}};
        qsvm_dataset* raw = nullptr;
        check(qsvm_dataset_load_csv(path.c_str(), options.dump().c_str(), &raw));
        return wrap(raw);
    }
};

struct TrainOpts {
    std::string kernel = "gaussian";
    double gamma = 1.0;
    int degree = 3;
    double coef0 = 0.0;
    long base = 2;
    long bits = 2;
    double penalty = 0.0;
    std::string sampler = "sa";
    long reads = 100;
    long sweeps = 1000;
    double t_final = 0.01;
    std::optional<double> t_initial;
    std::optional<double> temperature;
    std::optional<double> box_parameter;
    std::string aggregation = "prob";
    long batch_size = 0;  // 0 = auto
    bool stratified = false;
    std::optional<long> budget;
    uint64_t seed = 0;
    int threads = 0;

    void add_to(CLI::App* cmd) {
        cmd->add_option("--kernel", kernel, "kernel: gaussian, linear or polynomial");
        cmd->add_option("--gamma", gamma, "gaussian kernel width");
        cmd->add_option("--degree", degree, "polynomial kernel degree");
        cmd->add_option("--coef0", coef0, "polynomial kernel offset");
        cmd->add_option("--base", base, "encoding base B");
        cmd->add_option("--bits", bits, "encoding bits K per multiplier");
        cmd->add_option("--penalty", penalty, "equality-constraint penalty");
        cmd->add_option("--sampler", sampler, "sampler: sa, exact or import");
        cmd->add_option("--reads", reads, "annealing reads");
        cmd->add_option("--sweeps", sweeps, "annealing sweeps per read");
        cmd->add_option("--t-initial", t_initial, "initial temperature (default: scale-adaptive)");
        cmd->add_option("--t-final", t_final, "final temperature");
        cmd->add_option("--temperature", temperature,
                        "Boltzmann aggregation temperature (default: energy std dev)");
        cmd->add_option("--box-parameter", box_parameter,
                        "box bound C in the bias formula (default: alpha_max)");
        cmd->add_option("--aggregation", aggregation, "aggregation: prob or best");
        cmd->add_option("--batch-size", batch_size, "samples per batch, 0 = budget/bits");
        cmd->add_flag("--stratified", stratified, "balance labels across batches");
        cmd->add_option("--budget", budget, "variable budget (overrides QSVM_VAR_BUDGET)");
        cmd->add_option("--seed", seed, "seed for sampling, batching and splitting");
        cmd->add_option("--threads", threads, "annealing worker threads, 0 = all cores");
    }

    long resolved_budget() const {
        if (budget) return *budget;
        if (const char* env = std::getenv("QSVM_VAR_BUDGET")) {
            char* end = nullptr;
            long value = std::strtol(env, &end, 10);
            if (end == env || *end != '\0' || value < 1)
                fail("QSVM_VAR_BUDGET must be a positive integer, got '" + std::string(env) + "'");
            return value;
        }
        return 550;
    }

    json to_config(const std::string& sampler_type) const {
        json kernel_doc = {{"kind", kernel}};
        if (kernel == "gaussian" || kernel == "rbf") kernel_doc["gamma"] = gamma;
        if (kernel == "polynomial" || kernel == "poly") {
            kernel_doc["degree"] = degree;
            kernel_doc["coef0"] = coef0;
        }
        json sampler_doc = {{"type", sampler_type}};
        if (sampler_type == "sa") {
            sampler_doc["num_reads"] = reads;
            sampler_doc["sweeps_per_read"] = sweeps;
            sampler_doc["t_final"] = t_final;
            if (t_initial) sampler_doc["t_initial"] = *t_initial;
            sampler_doc["seed"] = seed;
        }
        json boltzmann = json::object();
        if (temperature) boltzmann["temperature"] = *temperature;
        if (box_parameter) boltzmann["box_parameter"] = *box_parameter;
        json config = {{"kernel", kernel_doc},
                       {"encoding", {{"base", base}, {"bits", bits}, {"penalty", penalty}}},
                       {"sampler", sampler_doc},
                       {"boltzmann", boltzmann},
                       {"aggregation", aggregation},
                       {"batch",
                        {{"batch_size", batch_size > 0 ? json(batch_size) : json("auto")},
                         {"shuffle_seed", seed},
                         {"stratified", stratified}}},
                       {"variable_budget", resolved_budget()},
                       {"threads", threads}};
        return config;
    }
};

// ---- train -----------------------------------------------------------------

struct TrainCommand {
    DataOpts data;
    TrainOpts train;
    std::optional<double> test_fraction;
    std::string out = "model.json";
    std::string report_path;
    std::string samples_path;
    std::string timings_path;

    int run() {
        if (train.sampler != "sa" && train.sampler != "exact" && train.sampler != "import")
            fail("--sampler must be sa, exact or import");
        if (train.sampler == "import" && samples_path.empty())
            fail("--sampler import requires --samples");

        auto full = data.load();
        DatasetPtr train_part{nullptr, &qsvm_dataset_free};
        DatasetPtr test_part{nullptr, &qsvm_dataset_free};
        const qsvm_dataset* train_view = full.get();
        if (test_fraction) {
            qsvm_dataset *raw_train = nullptr, *raw_test = nullptr;
            check(qsvm_dataset_split(full.get(), *test_fraction, train.seed, 0, &raw_train,
                                     &raw_test));
            train_part = wrap(raw_train);
            test_part = wrap(raw_test);
            train_view = train_part.get();
        }

        const auto started = std::chrono::steady_clock::now();
        qsvm_model* raw_model = nullptr;
        char* raw_report = nullptr;
        if (train.sampler == "import") {
            const json config = train.to_config("sa");
            qsvm_qubo* raw_qubo = nullptr;
            check(qsvm_qubo_build(train_view, config.dump().c_str(), &raw_qubo));
            auto qubo = wrap(raw_qubo);
            qsvm_samples* raw_samples = nullptr;
            check(qsvm_samples_import(qubo.get(), samples_path.c_str(), &raw_samples));
            auto samples = wrap(raw_samples);
            check(qsvm_model_from_samples(train_view, qubo.get(), samples.get(),
                                          config.dump().c_str(), &raw_model, &raw_report));
        } else {
            const json config = train.to_config(train.sampler);
            check(qsvm_train(train_view, config.dump().c_str(), &raw_model, &raw_report));
        }
        const double train_ms = elapsed_ms(started);
        auto model = wrap(raw_model);
        json report = json::parse(take_string(raw_report));

        if (test_fraction) {
            char* raw_metrics = nullptr;
            check(qsvm_model_evaluate(model.get(), test_part.get(), nullptr, &raw_metrics));
            report["holdout"] = {{"test_fraction", *test_fraction},
                                 {"metrics", json::parse(take_string(raw_metrics))}};
        }

        check(qsvm_model_save(model.get(), out.c_str()));
        const std::string report_text = report.dump(2) + "\n";
        if (!report_path.empty())
            write_text(report_path, report_text);
        else
            std::cout << report_text;

        std::cerr << "trained in " << train_ms << " ms; model written to " << out << "\n";
        if (!timings_path.empty())
            write_text(timings_path, json({{"train_ms", train_ms}}).dump(2) + "\n");
        return 0;
    }
};

// ---- predict ---------------------------------------------------------------

struct PredictCommand {
    DataOpts data;
    std::string model_path;
    std::string out;

    int run() {
        qsvm_model* raw_model = nullptr;
        check(qsvm_model_load(model_path.c_str(), &raw_model));
        auto model = wrap(raw_model);
        auto dataset = data.load();
        std::vector<long> labels(qsvm_dataset_num_samples(dataset.get()));
        check(qsvm_model_predict_dataset(model.get(), dataset.get(), labels.data()));
        std::string text;
        for (long label : labels) text += std::to_string(label) + "\n";
        if (!out.empty())
            write_text(out, text);
        else
            std::cout << text;
        return 0;
    }
};

// ---- evaluate --------------------------------------------------------------

struct EvaluateCommand {
    DataOpts data;
    std::string model_path;
    std::optional<long> positive_class;
    std::string out;
    std::string grid_spec;
    std::string grid_out = "boundary_grid.csv";

    int run() {
        qsvm_model* raw_model = nullptr;
        check(qsvm_model_load(model_path.c_str(), &raw_model));
        auto model = wrap(raw_model);
        auto dataset = data.load();

        json options = json::object();
        if (positive_class) options["positive_class"] = *positive_class;
        char* raw_metrics = nullptr;
        check(qsvm_model_evaluate(model.get(), dataset.get(), options.dump().c_str(),
                                  &raw_metrics));
        const json metrics = json::parse(take_string(raw_metrics));

        char line[64];
        std::snprintf(line, sizeof line, "%-10s %8.4f\n", "Accuracy",
                      metrics.at("accuracy").get<double>());
        std::cout << line;
        std::snprintf(line, sizeof line, "%-10s %8.4f\n", "Precision",
                      metrics.at("precision").get<double>());
        std::cout << line;
        std::snprintf(line, sizeof line, "%-10s %8.4f\n", "Recall",
                      metrics.at("recall").get<double>());
        std::cout << line;
        std::snprintf(line, sizeof line, "%-10s %8.4f\n", "F1 Score",
                      metrics.at("f1").get<double>());
        std::cout << line;
        if (!metrics.at("zero_division").empty())
            std::cerr << "note: zero denominators in " << metrics.at("zero_division").dump()
                      << ", reported as 0\n";

        if (!out.empty()) write_text(out, metrics.dump(2) + "\n");

        if (!grid_spec.empty()) {
            long width = 0, height = 0;
            if (std::sscanf(grid_spec.c_str(), "%ldx%ld", &width, &height) != 2)
                fail("--boundary-grid expects WxH, e.g. 50x50");
            if (qsvm_dataset_num_features(dataset.get()) != 2)
                fail("--boundary-grid needs 2-D data");
            const long n = qsvm_dataset_num_samples(dataset.get());
            std::vector<double> features(static_cast<size_t>(n) * 2);
            check(qsvm_dataset_copy_features(dataset.get(), features.data()));
            double lo0 = features[0], hi0 = features[0];
            double lo1 = features[1], hi1 = features[1];
            for (long i = 0; i < n; ++i) {
                lo0 = std::min(lo0, features[2 * i]);
                hi0 = std::max(hi0, features[2 * i]);
                lo1 = std::min(lo1, features[2 * i + 1]);
                hi1 = std::max(hi1, features[2 * i + 1]);
            }
            check(qsvm_model_decision_grid(model.get(), lo0, hi0, lo1, hi1, width, height,
                                           grid_out.c_str()));
            std::cerr << "decision grid (" << width << "x" << height << ") written to "
                      << grid_out << "\n";
        }
        return 0;
    }
};

// ---- export-qubo / import-samples -------------------------------------------

struct ExportQuboCommand {
    DataOpts data;
    TrainOpts train;
    std::string out = "problem.qubo";
    std::string meta = "problem.meta.json";

    int run() {
        auto dataset = data.load();
        const json config = train.to_config("sa");
        qsvm_qubo* raw_qubo = nullptr;
        check(qsvm_qubo_build(dataset.get(), config.dump().c_str(), &raw_qubo));
        auto qubo = wrap(raw_qubo);
        check(qsvm_qubo_export(qubo.get(), out.c_str(), meta.c_str()));
        char* digest = nullptr;
        check(qsvm_qubo_digest(qubo.get(), &digest));
        std::cerr << "exported " << qsvm_qubo_num_vars(qubo.get()) << " variables, digest "
                  << take_string(digest) << "\n";
        return 0;
    }
};

struct ImportSamplesCommand {
    DataOpts data;
    std::string meta_path;
    std::string samples_path;
    std::optional<double> temperature;
    std::optional<double> box_parameter;
    std::string aggregation = "prob";
    std::string out = "model.json";
    std::string report_path;

    int run() {
        std::FILE* file = std::fopen(meta_path.c_str(), "rb");
        if (!file) fail("cannot open '" + meta_path + "'");
        std::string meta_text;
        char buffer[4096];
        size_t got;
        while ((got = std::fread(buffer, 1, sizeof buffer, file)) > 0)
            meta_text.append(buffer, got);
        std::fclose(file);

        json meta;
        try {
            meta = json::parse(meta_text);
        } catch (const json::exception& e) {
            fail("'" + meta_path + "' is not valid JSON: " + e.what());
        }
        if (meta.value("format", std::string()) != "qsvm-qubo-meta")
            fail("'" + meta_path + "' is not a QUBO metadata document");

        json config = {{"kernel", meta.at("kernel")}, {"encoding", meta.at("encoding")}};
        json boltzmann = json::object();
        if (temperature) boltzmann["temperature"] = *temperature;
        if (box_parameter) boltzmann["box_parameter"] = *box_parameter;
        config["boltzmann"] = boltzmann;
        config["aggregation"] = aggregation;
        // The rebuilt problem must be the one the samples were drawn from;
        // budget checks no longer apply to it.
        config["variable_budget"] = meta.value("num_vars", 550L);

        auto dataset = data.load();
        qsvm_qubo* raw_qubo = nullptr;
        check(qsvm_qubo_build(dataset.get(), config.dump().c_str(), &raw_qubo));
        auto qubo = wrap(raw_qubo);

        char* raw_digest = nullptr;
        check(qsvm_qubo_digest(qubo.get(), &raw_digest));
        const std::string digest = take_string(raw_digest);
        const std::string declared = meta.value("problem_digest", std::string());
        if (!declared.empty() && declared != digest) {
            std::cerr << "error: metadata digest " << declared
                      << " does not match the problem rebuilt from '" << data.path << "' ("
                      << digest << ")\n";
            throw CliError{kExitIntegrity};
        }

        qsvm_samples* raw_samples = nullptr;
        check(qsvm_samples_import(qubo.get(), samples_path.c_str(), &raw_samples));
        auto samples = wrap(raw_samples);

        qsvm_model* raw_model = nullptr;
        char* raw_report = nullptr;
        check(qsvm_model_from_samples(dataset.get(), qubo.get(), samples.get(),
                                      config.dump().c_str(), &raw_model, &raw_report));
        auto model = wrap(raw_model);
        check(qsvm_model_save(model.get(), out.c_str()));
        const std::string report_text = take_string(raw_report);
        if (!report_path.empty())
            write_text(report_path, report_text);
        else
            std::cout << report_text;
        std::cerr << "model written to " << out << "\n";
        return 0;
    }
};

// ---- benchmark ---------------------------------------------------------------

struct BenchmarkCommand {
    std::string banknote_path;
    std::string iris_path;
    std::vector<uint64_t> seeds = {1, 2, 3, 4, 5};
    long train_size = 250;
    long test_size = 100;
    double iris_test_fraction = 0.4;
    long reads = 100;
    long sweeps = 1000;
    int threads = 0;
    std::optional<long> budget;
    std::string out;

    json run_cell(const qsvm_dataset* train, const qsvm_dataset* test, const json& config,
                  double* out_ms) {
        const auto started = std::chrono::steady_clock::now();
        qsvm_model* raw_model = nullptr;
        check(qsvm_train(train, config.dump().c_str(), &raw_model, nullptr));
        *out_ms = elapsed_ms(started);
        auto model = wrap(raw_model);
        char* raw_metrics = nullptr;
        check(qsvm_model_evaluate(model.get(), test, nullptr, &raw_metrics));
        return json::parse(take_string(raw_metrics));
    }

    static void print_row(const std::string& method, const std::string& seed,
                          const json& metrics) {
        char line[160];
        std::snprintf(line, sizeof line, "%-10s %6s  %8.4f  %9.4f  %8.4f  %8.4f\n",
                      method.c_str(), seed.c_str(), metrics.at("accuracy").get<double>(),
                      metrics.at("precision").get<double>(), metrics.at("recall").get<double>(),
                      metrics.at("f1").get<double>());
        std::cout << line;
    }

    int run() {
        if (banknote_path.empty() && iris_path.empty())
            fail("benchmark needs --banknote and/or --iris dataset paths");

        TrainOpts base;
        base.reads = reads;
        base.sweeps = sweeps;
        base.threads = threads;
        base.budget = budget;

        json cells = json::array();
        const std::vector<std::string> methods = {"prob", "best"};

        if (!banknote_path.empty()) {
            DataOpts opts;
            opts.path = banknote_path;
            auto full = opts.load();
            std::cout << "== banknote (train " << train_size << ", test " << test_size
                      << ", gamma 16, C 3, B 2, K 2, penalty 0.001, minmax scaling) ==\n";
            std::cout << "method       seed  accuracy  precision    recall        f1\n";
            for (const auto& method : methods) {
                for (uint64_t seed : seeds) {
                    qsvm_dataset *raw_train = nullptr, *raw_test = nullptr;
                    check(qsvm_dataset_subsample(full.get(), train_size, test_size, seed,
                                                 &raw_train, &raw_test));
                    auto train = wrap(raw_train);
                    auto test = wrap(raw_test);
                    // Fit the feature range on the training subsample only.
                    qsvm_dataset *raw_strain = nullptr, *raw_stest = nullptr;
                    check(qsvm_dataset_scale_minmax(train.get(), train.get(), &raw_strain));
                    auto scaled_train = wrap(raw_strain);
                    check(qsvm_dataset_scale_minmax(train.get(), test.get(), &raw_stest));
                    auto scaled_test = wrap(raw_stest);

                    TrainOpts cell_opts = base;
                    cell_opts.gamma = 16.0;
                    cell_opts.penalty = 0.001;
                    cell_opts.aggregation = method;
                    cell_opts.seed = seed;
                    double ms = 0.0;
                    const json metrics = run_cell(scaled_train.get(), scaled_test.get(),
                                                  cell_opts.to_config("sa"), &ms);
                    print_row(method + "-sa", std::to_string(seed), metrics);
                    std::cerr << "banknote " << method << "-sa seed " << seed << ": " << ms
                              << " ms\n";
                    cells.push_back({{"dataset", "banknote"},
                                     {"method", method + "-sa"},
                                     {"seed", seed},
                                     {"metrics", metrics}});
                }
            }
        }

        if (!iris_path.empty()) {
            DataOpts opts;
            opts.path = iris_path;
            auto full = opts.load();
            std::cout << "== iris (test fraction " << iris_test_fraction
                      << ", gamma 1, penalty 1, B 2, K 2, one-vs-one, macro metrics) ==\n";
            std::cout << "method       seed  accuracy  precision    recall        f1\n";
            for (const auto& method : methods) {
                for (uint64_t seed : seeds) {
                    qsvm_dataset *raw_train = nullptr, *raw_test = nullptr;
                    check(qsvm_dataset_split(full.get(), iris_test_fraction, seed, 0, &raw_train,
                                             &raw_test));
                    auto train = wrap(raw_train);
                    auto test = wrap(raw_test);

                    TrainOpts cell_opts = base;
                    cell_opts.gamma = 1.0;
                    cell_opts.penalty = 1.0;
                    cell_opts.aggregation = method;
                    cell_opts.seed = seed;
                    double ms = 0.0;
                    const json metrics =
                        run_cell(train.get(), test.get(), cell_opts.to_config("sa"), &ms);
                    print_row(method + "-sa", std::to_string(seed), metrics);
                    std::cerr << "iris " << method << "-sa seed " << seed << ": " << ms
                              << " ms\n";
                    cells.push_back({{"dataset", "iris"},
                                     {"method", method + "-sa"},
                                     {"seed", seed},
                                     {"metrics", metrics}});
                }
            }
        }

        // Mean metrics per dataset and method, in fixed cell order.
        json summary = json::object();
        for (const auto& cell : cells) {
            const std::string key =
                cell.at("dataset").get<std::string>() + "/" + cell.at("method").get<std::string>();
            if (!summary.contains(key))
                summary[key] = {{"accuracy", 0.0}, {"precision", 0.0}, {"recall", 0.0},
                                {"f1", 0.0},       {"cells", 0}};
            for (const char* metric : {"accuracy", "precision", "recall", "f1"})
                summary[key][metric] = summary[key][metric].get<double>() +
                                       cell.at("metrics").at(metric).get<double>();
            summary[key]["cells"] = summary[key]["cells"].get<long>() + 1;
        }
        std::cout << "== mean over seeds ==\n";
        for (auto& [key, entry] : summary.items()) {
            const long count = entry.at("cells").get<long>();
            for (const char* metric : {"accuracy", "precision", "recall", "f1"})
                entry[metric] = entry[metric].get<double>() / static_cast<double>(count);
            char line[160];
            std::snprintf(line, sizeof line, "%-24s  %8.4f  %9.4f  %8.4f  %8.4f\n", key.c_str(),
                          entry.at("accuracy").get<double>(),
                          entry.at("precision").get<double>(),
                          entry.at("recall").get<double>(), entry.at("f1").get<double>());
            std::cout << line;
        }

        if (!out.empty()) {
            json table = {{"seeds", seeds},
                          {"banknote", {{"train_size", train_size}, {"test_size", test_size}}},
                          {"iris", {{"test_fraction", iris_test_fraction}}},
                          {"sampler", {{"reads", reads}, {"sweeps", sweeps}}},
                          {"cells", cells},
                          {"summary", summary}};
            write_text(out, table.dump(2) + "\n");
            std::cerr << "benchmark table written to " << out << "\n";
        }
        return 0;
    }
};

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"SVM training by QUBO sampling with Boltzmann-weighted aggregation"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(qsvm_version()));

    TrainCommand train_cmd;
    auto* train = app.add_subcommand("train", "train a classifier and write the model JSON");
    train_cmd.data.add_to(train);
    train_cmd.train.add_to(train);
    train->add_option("--test-fraction", train_cmd.test_fraction,
                      "hold out a test split and report its metrics");
    train->add_option("--samples", train_cmd.samples_path,
                      "sample-set document for --sampler import");
    train->add_option("--out", train_cmd.out, "model output path");
    train->add_option("--report", train_cmd.report_path,
                      "write the training report here instead of stdout");
    train->add_option("--timings-out", train_cmd.timings_path,
                      "optional wall-clock sidecar (not covered by determinism)");

    PredictCommand predict_cmd;
    auto* predict = app.add_subcommand("predict", "predict labels for a dataset");
    predict->add_option("--model", predict_cmd.model_path, "model JSON path")->required();
    predict_cmd.data.add_to(predict);
    predict->add_option("--out", predict_cmd.out, "write one label per line here");

    EvaluateCommand evaluate_cmd;
    auto* evaluate = app.add_subcommand("evaluate", "score a model against labeled data");
    evaluate->add_option("--model", evaluate_cmd.model_path, "model JSON path")->required();
    evaluate_cmd.data.add_to(evaluate);
    evaluate->add_option("--positive-class", evaluate_cmd.positive_class,
                         "positive class for binary metrics");
    evaluate->add_option("--out", evaluate_cmd.out, "write metrics JSON here");
    evaluate->add_option("--boundary-grid", evaluate_cmd.grid_spec,
                         "emit a WxH decision-value grid over the 2-D feature box");
    evaluate->add_option("--grid-out", evaluate_cmd.grid_out, "grid output path");

    ExportQuboCommand export_cmd;
    auto* export_qubo =
        app.add_subcommand("export-qubo", "write the QUBO coefficients and metadata");
    export_cmd.data.add_to(export_qubo);
    export_cmd.train.add_to(export_qubo);
    export_qubo->add_option("--out", export_cmd.out, "QUBO text output path");
    export_qubo->add_option("--meta", export_cmd.meta, "metadata JSON output path");

    ImportSamplesCommand import_cmd;
    auto* import_samples = app.add_subcommand(
        "import-samples", "validate an external sample set and aggregate it into a model");
    import_cmd.data.add_to(import_samples);
    import_samples->add_option("--meta", import_cmd.meta_path, "QUBO metadata JSON")->required();
    import_samples->add_option("--samples", import_cmd.samples_path, "sample-set document")
        ->required();
    import_samples->add_option("--temperature", import_cmd.temperature,
                               "Boltzmann aggregation temperature");
    import_samples->add_option("--box-parameter", import_cmd.box_parameter,
                               "box bound C in the bias formula");
    import_samples->add_option("--aggregation", import_cmd.aggregation, "prob or best");
    import_samples->add_option("--out", import_cmd.out, "model output path");
    import_samples->add_option("--report", import_cmd.report_path,
                               "write the aggregation report here instead of stdout");

    BenchmarkCommand bench_cmd;
    auto* benchmark =
        app.add_subcommand("benchmark", "run the banknote / iris benchmark matrix");
    benchmark->add_option("--banknote", bench_cmd.banknote_path, "banknote CSV path");
    benchmark->add_option("--iris", bench_cmd.iris_path, "iris CSV path");
    benchmark->add_option("--seeds", bench_cmd.seeds, "seeds for the benchmark cells");
    benchmark->add_option("--train-size", bench_cmd.train_size, "banknote training subsample");
    benchmark->add_option("--test-size", bench_cmd.test_size, "banknote test subsample");
    benchmark->add_option("--test-fraction", bench_cmd.iris_test_fraction, "iris test fraction");
    benchmark->add_option("--reads", bench_cmd.reads, "annealing reads per batch");
    benchmark->add_option("--sweeps", bench_cmd.sweeps, "annealing sweeps per read");
    benchmark->add_option("--threads", bench_cmd.threads, "annealing worker threads");
    benchmark->add_option("--budget", bench_cmd.budget, "variable budget");
    benchmark->add_option("--out", bench_cmd.out, "write the benchmark table JSON here");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (*train) return train_cmd.run();
        if (*predict) return predict_cmd.run();
        if (*evaluate) return evaluate_cmd.run();
        if (*export_qubo) return export_cmd.run();
        if (*import_samples) return import_cmd.run();
        if (*benchmark) return bench_cmd.run();
    } catch (const CliError& e) {
        return e.code;
    }
    return 0;
}
