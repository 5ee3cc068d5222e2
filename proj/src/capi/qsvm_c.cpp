// C API implementation: thin exception-to-status translation over the core.

#include "qsvm/qsvm.h"

#include <cstring>
#include <new>
#include <string>

#include "../core/error.hpp"
#include "../core/pipeline.hpp"

using nlohmann::json;

struct qsvm_dataset {
    qsvm::Dataset data;
};
struct qsvm_qubo {
    qsvm::QuboProblem problem;
    qsvm::Dataset source;  // two-class dataset the problem was built from
};
struct qsvm_samples {
    qsvm::SampleSet samples;
};
struct qsvm_model {
    qsvm::Model model;
};

namespace {

thread_local std::string g_last_error;

qsvm_status status_of(qsvm::ErrorCode code) {
    switch (code) {
        case qsvm::ErrorCode::invalid_argument: return QSVM_ERROR_INVALID_ARGUMENT;
        case qsvm::ErrorCode::io: return QSVM_ERROR_IO;
        case qsvm::ErrorCode::parse: return QSVM_ERROR_PARSE;
        case qsvm::ErrorCode::capacity: return QSVM_ERROR_CAPACITY;
        case qsvm::ErrorCode::integrity: return QSVM_ERROR_INTEGRITY;
        case qsvm::ErrorCode::provenance: return QSVM_ERROR_PROVENANCE;
        case qsvm::ErrorCode::internal: return QSVM_ERROR_INTERNAL;
    }
    return QSVM_ERROR_INTERNAL;
}

template <typename Fn>
qsvm_status guarded(Fn&& fn) {
    try {
        fn();
        return QSVM_OK;
    } catch (const qsvm::Error& e) {
        g_last_error = e.what();
        return status_of(e.code());
    } catch (const std::bad_alloc&) {
        g_last_error = "out of memory";
        return QSVM_ERROR_INTERNAL;
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return QSVM_ERROR_INTERNAL;
    }
}

qsvm_status fail_null(const char* what) {
    g_last_error = std::string(what) + " must not be null";
    return QSVM_ERROR_INVALID_ARGUMENT;
}

char* copy_string(const std::string& text) {
    char* out = new char[text.size() + 1];
    std::memcpy(out, text.c_str(), text.size() + 1);
    return out;
}

json parse_options(const char* options_json, const char* context) {
    if (options_json == nullptr || *options_json == '\0') return json::object();
    try {
        return json::parse(options_json);
    } catch (const json::exception& e) {
        qsvm::raise(qsvm::ErrorCode::parse,
                    std::string(context) + ": invalid JSON: " + e.what());
    }
}

qsvm::TrainConfig config_from(const char* config_json) {
    return qsvm::TrainConfig::from_json(parse_options(config_json, "config"));
}

} // namespace

extern "C" {

const char* qsvm_version(void) { return "1.0.0"; }

const char* qsvm_last_error(void) { return g_last_error.c_str(); }

void qsvm_string_free(char* text) { delete[] text; }

/* ---- datasets -------------------------------------------------------- */

qsvm_status qsvm_dataset_create(const double* features, const long* labels, long num_samples,
                                long num_features, qsvm_dataset** out) {
    if (!features) return fail_null("features");
    if (!labels) return fail_null("labels");
    if (!out) return fail_null("out");
    return guarded([&] {
        qsvm::Dataset data;
        data.num_samples = num_samples;
        data.num_features = num_features;
        if (num_samples > 0 && num_features > 0) {
            data.features.assign(features, features + num_samples * num_features);
            data.labels.assign(labels, labels + num_samples);
        }
        qsvm::validate(data);
        *out = new qsvm_dataset{std::move(data)};
    });
}

qsvm_status qsvm_dataset_load_csv(const char* path, const char* options_json,
                                  qsvm_dataset** out) {
    if (!path) return fail_null("path");
    if (!out) return fail_null("out");
    return guarded([&] {
        const json options = parse_options(options_json, "csv options");
        qsvm::CsvOptions csv;
        csv.has_header = options.value("has_header", csv.has_header);
        csv.label_column = options.value("label_column", csv.label_column);
        const std::string delimiter = options.value("delimiter", std::string(","));
        if (delimiter.size() != 1)
            qsvm::raise(qsvm::ErrorCode::invalid_argument,
                        "delimiter must be a single character");
        csv.delimiter = delimiter[0];
        *out = new qsvm_dataset{qsvm::load_csv(path, csv)};
    });
}

qsvm_status qsvm_dataset_save_csv(const qsvm_dataset* data, const char* path) {
    if (!data) return fail_null("data");
    if (!path) return fail_null("path");
    return guarded([&] { qsvm::save_csv(data->data, path); });
}

long qsvm_dataset_num_samples(const qsvm_dataset* data) {
    return data ? data->data.num_samples : 0;
}

long qsvm_dataset_num_features(const qsvm_dataset* data) {
    return data ? data->data.num_features : 0;
}

qsvm_status qsvm_dataset_copy_features(const qsvm_dataset* data, double* out) {
    if (!data) return fail_null("data");
    if (!out) return fail_null("out");
    std::memcpy(out, data->data.features.data(), data->data.features.size() * sizeof(double));
    return QSVM_OK;
}

qsvm_status qsvm_dataset_copy_labels(const qsvm_dataset* data, long* out) {
    if (!data) return fail_null("data");
    if (!out) return fail_null("out");
    std::memcpy(out, data->data.labels.data(), data->data.labels.size() * sizeof(long));
    return QSVM_OK;
}

qsvm_status qsvm_dataset_split(const qsvm_dataset* data, double test_fraction, uint64_t seed,
                               int stratified, qsvm_dataset** out_train,
                               qsvm_dataset** out_test) {
    if (!data) return fail_null("data");
    if (!out_train || !out_test) return fail_null("out");
    return guarded([&] {
        auto [train, test] = qsvm::split(data->data, test_fraction, seed, stratified != 0);
        *out_train = new qsvm_dataset{std::move(train)};
        *out_test = new qsvm_dataset{std::move(test)};
    });
}

qsvm_status qsvm_dataset_subsample(const qsvm_dataset* data, long n_train, long n_test,
                                   uint64_t seed, qsvm_dataset** out_train,
                                   qsvm_dataset** out_test) {
    if (!data) return fail_null("data");
    if (!out_train || !out_test) return fail_null("out");
    return guarded([&] {
        auto [train, test] = qsvm::subsample(data->data, n_train, n_test, seed);
        *out_train = new qsvm_dataset{std::move(train)};
        *out_test = new qsvm_dataset{std::move(test)};
    });
}

qsvm_status qsvm_dataset_scale_minmax(const qsvm_dataset* reference, const qsvm_dataset* input,
                                      qsvm_dataset** out) {
    if (!reference) return fail_null("reference");
    if (!input) return fail_null("input");
    if (!out) return fail_null("out");
    return guarded(
        [&] { *out = new qsvm_dataset{qsvm::minmax_scale(reference->data, input->data)}; });
}

void qsvm_dataset_free(qsvm_dataset* data) { delete data; }

/* ---- training and prediction ----------------------------------------- */

qsvm_status qsvm_train(const qsvm_dataset* train, const char* config_json,
                       qsvm_model** out_model, char** out_report_json) {
    if (!train) return fail_null("train");
    if (!out_model) return fail_null("out_model");
    return guarded([&] {
        const qsvm::TrainConfig cfg = config_from(config_json);
        json report;
        qsvm::Model model = qsvm::train_model(train->data, cfg, &report);
        *out_model = new qsvm_model{std::move(model)};
        if (out_report_json) *out_report_json = copy_string(report.dump(2) + "\n");
    });
}

qsvm_status qsvm_model_save(const qsvm_model* model, const char* path) {
    if (!model) return fail_null("model");
    if (!path) return fail_null("path");
    return guarded([&] { qsvm::save_model(model->model, path); });
}

qsvm_status qsvm_model_load(const char* path, qsvm_model** out) {
    if (!path) return fail_null("path");
    if (!out) return fail_null("out");
    return guarded([&] { *out = new qsvm_model{qsvm::load_model(path)}; });
}

qsvm_status qsvm_model_info(const qsvm_model* model, char** out_json) {
    if (!model) return fail_null("model");
    if (!out_json) return fail_null("out_json");
    return guarded([&] {
        json info;
        info["num_features"] = model->model.num_features();
        if (model->model.type == qsvm::Model::Type::ensemble) {
            info["type"] = "ensemble";
            info["classes"] = {model->model.negative_label, model->model.positive_label};
            info["num_members"] = model->model.ensemble.members.size();
        } else {
            info["type"] = "ovo";
            info["classes"] = model->model.ovo.classes;
            info["num_pairs"] = model->model.ovo.pair_models.size();
        }
        *out_json = copy_string(info.dump(2) + "\n");
    });
}

qsvm_status qsvm_model_predict(const qsvm_model* model, const double* x, long num_features,
                               long* out_label) {
    if (!model) return fail_null("model");
    if (!x) return fail_null("x");
    if (!out_label) return fail_null("out_label");
    return guarded([&] { *out_label = qsvm::predict_model(model->model, x, num_features); });
}

qsvm_status qsvm_model_predict_dataset(const qsvm_model* model, const qsvm_dataset* data,
                                       long* out_labels) {
    if (!model) return fail_null("model");
    if (!data) return fail_null("data");
    if (!out_labels) return fail_null("out_labels");
    return guarded([&] {
        const auto predictions = qsvm::predict_dataset(model->model, data->data);
        std::memcpy(out_labels, predictions.data(), predictions.size() * sizeof(long));
    });
}

qsvm_status qsvm_model_decision(const qsvm_model* model, const double* x, long num_features,
                                double* out_value) {
    if (!model) return fail_null("model");
    if (!x) return fail_null("x");
    if (!out_value) return fail_null("out_value");
    return guarded([&] { *out_value = qsvm::model_decision(model->model, x, num_features); });
}

qsvm_status qsvm_model_evaluate(const qsvm_model* model, const qsvm_dataset* data,
                                const char* options_json, char** out_metrics_json) {
    if (!model) return fail_null("model");
    if (!data) return fail_null("data");
    if (!out_metrics_json) return fail_null("out_metrics_json");
    return guarded([&] {
        const json options = parse_options(options_json, "evaluate options");
        std::optional<long> positive;
        if (options.contains("positive_class"))
            positive = options.at("positive_class").get<long>();
        const auto report = qsvm::evaluate_model(model->model, data->data, positive);
        *out_metrics_json = copy_string(qsvm::metrics_to_json(report).dump(2) + "\n");
    });
}

qsvm_status qsvm_model_decision_grid(const qsvm_model* model, double x0_min, double x0_max,
                                     double x1_min, double x1_max, long width, long height,
                                     const char* path) {
    if (!model) return fail_null("model");
    if (!path) return fail_null("path");
    return guarded([&] {
        if (model->model.num_features() != 2)
            qsvm::raise(qsvm::ErrorCode::invalid_argument,
                        "decision grids need a model trained on 2-D features");
        if (width < 2 || height < 2)
            qsvm::raise(qsvm::ErrorCode::invalid_argument, "grid must be at least 2x2");
        if (!(x0_max > x0_min) || !(x1_max > x1_min))
            qsvm::raise(qsvm::ErrorCode::invalid_argument, "grid box must have positive extent");
        std::string out;
        out.reserve(static_cast<size_t>(width * height) * 40);
        char line[128];
        for (long i = 0; i < width; ++i) {
            const double x0 = x0_min + (x0_max - x0_min) * static_cast<double>(i) /
                                           static_cast<double>(width - 1);
            for (long j = 0; j < height; ++j) {
                const double x1 = x1_min + (x1_max - x1_min) * static_cast<double>(j) /
                                               static_cast<double>(height - 1);
                const double point[2] = {x0, x1};
                const double value = qsvm::model_decision(model->model, point, 2);
                std::snprintf(line, sizeof line, "%.17g,%.17g,%.17g\n", x0, x1, value);
                out += line;
            }
        }
        qsvm::write_file(path, out);
    });
}

void qsvm_model_free(qsvm_model* model) { delete model; }

/* ---- QUBO and sample-set round trip ----------------------------------- */

qsvm_status qsvm_qubo_build(const qsvm_dataset* train, const char* config_json,
                            qsvm_qubo** out) {
    if (!train) return fail_null("train");
    if (!out) return fail_null("out");
    return guarded([&] {
        const qsvm::TrainConfig cfg = config_from(config_json);
        const auto classes = train->data.classes();
        if (classes.size() != 2)
            qsvm::raise(qsvm::ErrorCode::invalid_argument,
                        "QUBO construction needs a two-class dataset, found " +
                            std::to_string(classes.size()) + " classes");
        const qsvm::TrainingSet mapped =
            qsvm::to_training_set(train->data, classes[1], classes[0]);
        auto problem = qsvm::build_qubo(mapped, cfg.encoding, cfg.variable_budget);
        *out = new qsvm_qubo{std::move(problem), train->data};
    });
}

long qsvm_qubo_num_vars(const qsvm_qubo* qubo) { return qubo ? qubo->problem.num_vars : 0; }

qsvm_status qsvm_qubo_digest(const qsvm_qubo* qubo, char** out_digest) {
    if (!qubo) return fail_null("qubo");
    if (!out_digest) return fail_null("out_digest");
    return guarded([&] { *out_digest = copy_string(qubo->problem.digest()); });
}

qsvm_status qsvm_qubo_export(const qsvm_qubo* qubo, const char* qubo_path,
                             const char* meta_path) {
    if (!qubo) return fail_null("qubo");
    if (!qubo_path) return fail_null("qubo_path");
    if (!meta_path) return fail_null("meta_path");
    return guarded([&] {
        qsvm::write_file(qubo_path, qsvm::export_qubo_text(qubo->problem));
        qsvm::write_file(meta_path, qsvm::export_qubo_metadata(qubo->problem));
    });
}

void qsvm_qubo_free(qsvm_qubo* qubo) { delete qubo; }

qsvm_status qsvm_samples_anneal(const qsvm_qubo* qubo, const char* config_json,
                                qsvm_samples** out) {
    if (!qubo) return fail_null("qubo");
    if (!out) return fail_null("out");
    return guarded([&] {
        const qsvm::TrainConfig cfg = config_from(config_json);
        *out = new qsvm_samples{qsvm::anneal(qubo->problem, cfg.anneal, cfg.threads)};
    });
}

qsvm_status qsvm_samples_enumerate(const qsvm_qubo* qubo, long max_vars, qsvm_samples** out) {
    if (!qubo) return fail_null("qubo");
    if (!out) return fail_null("out");
    return guarded([&] {
        const long cap = max_vars > 0 ? max_vars : qsvm::kDefaultEnumerationCap;
        *out = new qsvm_samples{qsvm::enumerate_exact(qubo->problem, cap)};
    });
}

qsvm_status qsvm_samples_import(const qsvm_qubo* qubo, const char* path, qsvm_samples** out) {
    if (!qubo) return fail_null("qubo");
    if (!path) return fail_null("path");
    if (!out) return fail_null("out");
    return guarded([&] {
        const std::string document = qsvm::read_file(path);
        *out = new qsvm_samples{qsvm::import_samples(qubo->problem, document)};
    });
}

qsvm_status qsvm_samples_export(const qsvm_samples* samples, const char* path) {
    if (!samples) return fail_null("samples");
    if (!path) return fail_null("path");
    return guarded([&] { qsvm::write_file(path, qsvm::export_samples(samples->samples)); });
}

qsvm_status qsvm_samples_info(const qsvm_samples* samples, char** out_json) {
    if (!samples) return fail_null("samples");
    if (!out_json) return fail_null("out_json");
    return guarded([&] {
        const auto distinct = qsvm::deduplicate(samples->samples);
        json info;
        info["count"] = samples->samples.records.size();
        info["distinct"] = distinct.records.size();
        info["min_energy"] = samples->samples.min_energy();
        info["sampler_info"] = samples->samples.sampler_info;
        info["problem_digest"] = samples->samples.problem_digest;
        *out_json = copy_string(info.dump(2) + "\n");
    });
}

void qsvm_samples_free(qsvm_samples* samples) { delete samples; }

qsvm_status qsvm_model_from_samples(const qsvm_dataset* train, const qsvm_qubo* qubo,
                                    const qsvm_samples* samples, const char* config_json,
                                    qsvm_model** out_model, char** out_report_json) {
    if (!train) return fail_null("train");
    if (!qubo) return fail_null("qubo");
    if (!samples) return fail_null("samples");
    if (!out_model) return fail_null("out_model");
    return guarded([&] {
        const qsvm::TrainConfig cfg = config_from(config_json);
        if (samples->samples.problem_digest != qubo->problem.digest())
            qsvm::raise(qsvm::ErrorCode::provenance,
                        "sample set digest " + samples->samples.problem_digest +
                            " does not match problem digest " + qubo->problem.digest());
        const auto classes = train->data.classes();
        if (classes.size() != 2)
            qsvm::raise(qsvm::ErrorCode::invalid_argument,
                        "aggregation needs the two-class dataset the problem was built from");
        const qsvm::TrainingSet mapped =
            qsvm::to_training_set(train->data, classes[1], classes[0]);
        if (mapped.labels != qubo->problem.labels)
            qsvm::raise(qsvm::ErrorCode::provenance,
                        "dataset labels do not match the problem's training labels");

        const qsvm::SampleSet distinct = qsvm::deduplicate(samples->samples);
        qsvm::BinaryModel member = qsvm::aggregate(distinct, mapped, cfg.encoding,
                                                   cfg.boltzmann, cfg.aggregation,
                                                   &qubo->problem.gram);
        qsvm::Model model;
        model.type = qsvm::Model::Type::ensemble;
        model.positive_label = classes[1];
        model.negative_label = classes[0];
        model.ensemble.members.push_back(std::move(member));
        model.ensemble.batch_config.batch_size = mapped.num_samples;

        if (out_report_json) {
            json report;
            report["config"] = cfg.to_json();
            report["model_type"] = "ensemble";
            report["classes"] = classes;
            report["num_samples"] = train->data.num_samples;
            report["num_features"] = train->data.num_features;
            report["pairs"] = json::array(
                {{{"classes", {classes[0], classes[1]}},
                  {"batches",
                   json::array({{{"index", 0},
                                 {"size", mapped.num_samples},
                                 {"num_vars", qubo->problem.num_vars},
                                 {"samples", samples->samples.records.size()},
                                 {"distinct_samples", distinct.records.size()},
                                 {"min_energy", distinct.min_energy()},
                                 {"temperature", model.ensemble.members[0].temperature}}})}}});
            *out_report_json = copy_string(report.dump(2) + "\n");
        }
        *out_model = new qsvm_model{std::move(model)};
    });
}

/* ---- metrics ----------------------------------------------------------- */

qsvm_status qsvm_metrics(const long* y_true, const long* y_pred, long count,
                         const char* options_json, char** out_json) {
    if (!y_true) return fail_null("y_true");
    if (!y_pred) return fail_null("y_pred");
    if (!out_json) return fail_null("out_json");
    return guarded([&] {
        if (count < 1)
            qsvm::raise(qsvm::ErrorCode::invalid_argument, "count must be >= 1");
        const json options = parse_options(options_json, "metrics options");
        const std::vector<long> truth(y_true, y_true + count);
        const std::vector<long> guess(y_pred, y_pred + count);
        const std::string averaging = options.value("averaging", std::string("binary"));
        qsvm::MetricsReport report;
        if (averaging == "macro") {
            report = qsvm::macro_metrics(truth, guess);
        } else if (averaging == "binary") {
            report = qsvm::binary_metrics(truth, guess, options.value("positive_class", 1L));
        } else {
            qsvm::raise(qsvm::ErrorCode::invalid_argument,
                        "averaging must be \"binary\" or \"macro\"");
        }
        *out_json = copy_string(qsvm::metrics_to_json(report).dump(2) + "\n");
    });
}

} // extern "C"
