#include "pipeline.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "error.hpp"

namespace qsvm {

namespace {

using nlohmann::json;

[[noreturn]] void parse_fail(const std::string& what) {
    raise(ErrorCode::parse, "config: " + what);
}

void reject_unknown_keys(const json& object, std::initializer_list<const char*> known,
                         const std::string& context) {
    for (auto it = object.begin(); it != object.end(); ++it) {
        bool ok = false;
        for (const char* key : known)
            if (it.key() == key) ok = true;
        if (!ok) parse_fail("unknown key '" + it.key() + "' in " + context);
    }
}

/// Accepts a number, or null / "auto" for an adaptive value.
std::optional<double> optional_number(const json& object, const char* key) {
    if (!object.contains(key) || object.at(key).is_null()) return std::nullopt;
    const auto& value = object.at(key);
    if (value.is_string()) {
        if (value.get<std::string>() == "auto") return std::nullopt;
        parse_fail(std::string(key) + " must be a number or \"auto\"");
    }
    if (!value.is_number()) parse_fail(std::string(key) + " must be a number");
    return value.get<double>();
}

KernelSpec kernel_from_json(const json& object) {
    reject_unknown_keys(object, {"kind", "gamma", "degree", "coef0"}, "kernel");
    KernelSpec spec;
    spec.kind = kernel_kind_from_name(object.value("kind", std::string("gaussian")));
    spec.gamma = object.value("gamma", spec.gamma);
    spec.degree = object.value("degree", spec.degree);
    spec.coef0 = object.value("coef0", spec.coef0);
    spec.validate();
    return spec;
}

json kernel_to_json(const KernelSpec& spec) {
    json object;
    object["kind"] = kernel_kind_name(spec.kind);
    if (spec.kind == KernelKind::gaussian) object["gamma"] = spec.gamma;
    if (spec.kind == KernelKind::polynomial) {
        object["degree"] = spec.degree;
        object["coef0"] = spec.coef0;
    }
    return object;
}

} // namespace

TrainConfig TrainConfig::from_json(const json& doc) {
    if (!doc.is_object()) parse_fail("expected a JSON object");
    reject_unknown_keys(doc,
                        {"kernel", "encoding", "sampler", "boltzmann", "aggregation", "batch",
                         "variable_budget", "threads"},
                        "config");
    TrainConfig cfg;
    try {
        if (doc.contains("kernel")) cfg.encoding.kernel = kernel_from_json(doc.at("kernel"));
        if (doc.contains("encoding")) {
            const auto& enc = doc.at("encoding");
            reject_unknown_keys(enc, {"base", "bits", "penalty"}, "encoding");
            cfg.encoding.base = enc.value("base", cfg.encoding.base);
            cfg.encoding.bits = enc.value("bits", cfg.encoding.bits);
            cfg.encoding.penalty = enc.value("penalty", cfg.encoding.penalty);
        }
        if (doc.contains("sampler")) {
            const auto& sampler = doc.at("sampler");
            reject_unknown_keys(sampler,
                                {"type", "num_reads", "sweeps_per_read", "t_initial", "t_final",
                                 "schedule", "seed", "max_vars"},
                                "sampler");
            const std::string type = sampler.value("type", std::string("sa"));
            if (type == "sa")
                cfg.sampler_type = SamplerType::sa;
            else if (type == "exact")
                cfg.sampler_type = SamplerType::exact;
            else
                parse_fail("unknown sampler type '" + type + "'");
            cfg.anneal.num_reads = sampler.value("num_reads", cfg.anneal.num_reads);
            cfg.anneal.sweeps_per_read =
                sampler.value("sweeps_per_read", cfg.anneal.sweeps_per_read);
            cfg.anneal.t_initial = optional_number(sampler, "t_initial");
            cfg.anneal.t_final = sampler.value("t_final", cfg.anneal.t_final);
            cfg.anneal.schedule = sampler.value("schedule", cfg.anneal.schedule);
            cfg.anneal.seed = sampler.value("seed", cfg.anneal.seed);
            cfg.enumeration_cap = sampler.value("max_vars", cfg.enumeration_cap);
        }
        if (doc.contains("boltzmann")) {
            const auto& boltz = doc.at("boltzmann");
            reject_unknown_keys(boltz, {"temperature", "box_parameter"}, "boltzmann");
            cfg.boltzmann.temperature = optional_number(boltz, "temperature");
            cfg.boltzmann.box_parameter = optional_number(boltz, "box_parameter");
        }
        if (doc.contains("aggregation"))
            cfg.aggregation = aggregation_from_name(doc.at("aggregation").get<std::string>());
        if (doc.contains("batch")) {
            const auto& batch = doc.at("batch");
            reject_unknown_keys(batch, {"batch_size", "shuffle_seed", "stratified"}, "batch");
            if (batch.contains("batch_size") && !batch.at("batch_size").is_string())
                cfg.batch.batch_size = batch.at("batch_size").get<long>();
            cfg.batch.shuffle_seed = batch.value("shuffle_seed", cfg.batch.shuffle_seed);
            cfg.batch.stratified = batch.value("stratified", cfg.batch.stratified);
        }
        cfg.variable_budget = doc.value("variable_budget", cfg.variable_budget);
        cfg.threads = doc.value("threads", cfg.threads);
    } catch (const json::exception& e) {
        parse_fail(e.what());
    }
    cfg.encoding.validate();
    if (cfg.sampler_type == SamplerType::sa) cfg.anneal.validate();
    cfg.boltzmann.validate();
    if (cfg.variable_budget < 1) parse_fail("variable_budget must be >= 1");
    if (cfg.batch.batch_size < 0) parse_fail("batch_size must be >= 1 or \"auto\"");
    return cfg;
}

TrainConfig TrainConfig::from_json_text(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::exception& e) {
        parse_fail(std::string("invalid JSON: ") + e.what());
    }
    return from_json(doc);
}

json TrainConfig::to_json() const {
    json doc;
    doc["kernel"] = kernel_to_json(encoding.kernel);
    doc["encoding"] = {{"base", encoding.base},
                       {"bits", encoding.bits},
                       {"penalty", encoding.penalty}};
    json sampler;
    sampler["type"] = sampler_type == SamplerType::sa ? "sa" : "exact";
    if (sampler_type == SamplerType::sa) {
        sampler["num_reads"] = anneal.num_reads;
        sampler["sweeps_per_read"] = anneal.sweeps_per_read;
        if (anneal.t_initial)
            sampler["t_initial"] = *anneal.t_initial;
        else
            sampler["t_initial"] = "auto";
        sampler["t_final"] = anneal.t_final;
        sampler["schedule"] = anneal.schedule;
        sampler["seed"] = anneal.seed;
    } else {
        sampler["max_vars"] = enumeration_cap;
    }
    doc["sampler"] = sampler;
    json boltz;
    if (boltzmann.temperature)
        boltz["temperature"] = *boltzmann.temperature;
    else
        boltz["temperature"] = "auto";
    if (boltzmann.box_parameter)
        boltz["box_parameter"] = *boltzmann.box_parameter;
    else
        boltz["box_parameter"] = "auto";
    doc["boltzmann"] = boltz;
    doc["aggregation"] = aggregation_name(aggregation);
    json batch;
    if (this->batch.batch_size > 0)
        batch["batch_size"] = this->batch.batch_size;
    else
        batch["batch_size"] = "auto";
    batch["shuffle_seed"] = this->batch.shuffle_seed;
    batch["stratified"] = this->batch.stratified;
    doc["batch"] = batch;
    doc["variable_budget"] = variable_budget;
    doc["threads"] = threads;
    return doc;
}

SamplerFn TrainConfig::make_sampler() const {
    if (sampler_type == SamplerType::sa) return make_anneal_sampler(anneal, threads);
    return make_exact_sampler(enumeration_cap);
}

Model train_model(const Dataset& data, const TrainConfig& cfg, json* report) {
    validate(data);
    const auto classes = data.classes();
    if (classes.size() < 2)
        raise(ErrorCode::invalid_argument, "training data contains a single class");

    const SamplerFn sampler = cfg.make_sampler();
    Model model;
    json pair_reports = json::array();

    if (classes.size() == 2) {
        model.type = Model::Type::ensemble;
        // The greater label maps to +1 so that {0,1} and {-1,+1} datasets
        // behave the way users expect.
        model.positive_label = classes[1];
        model.negative_label = classes[0];
        TrainingSet train = to_training_set(data, model.positive_label, model.negative_label);
        std::vector<TrainStats> stats;
        model.ensemble = train_ensemble(train, cfg.batch, cfg.encoding, sampler, cfg.boltzmann,
                                        cfg.aggregation, cfg.variable_budget, 0,
                                        report ? &stats : nullptr);
        if (report) {
            json batches = json::array();
            for (size_t j = 0; j < stats.size(); ++j)
                batches.push_back({{"index", j},
                                   {"size", stats[j].batch_size},
                                   {"num_vars", stats[j].num_vars},
                                   {"samples", stats[j].raw_samples},
                                   {"distinct_samples", stats[j].distinct_samples},
                                   {"min_energy", stats[j].min_energy},
                                   {"temperature", stats[j].temperature}});
            pair_reports.push_back({{"classes", {model.negative_label, model.positive_label}},
                                    {"batches", batches}});
        }
    } else {
        model.type = Model::Type::ovo;
        std::map<std::pair<long, long>, std::vector<TrainStats>> stats;
        model.ovo = train_ovo(data, cfg.encoding, cfg.batch, sampler, cfg.boltzmann,
                              cfg.aggregation, cfg.variable_budget, report ? &stats : nullptr);
        if (report) {
            for (const auto& [pair, batch_stats] : stats) {
                json batches = json::array();
                for (size_t j = 0; j < batch_stats.size(); ++j)
                    batches.push_back({{"index", j},
                                       {"size", batch_stats[j].batch_size},
                                       {"num_vars", batch_stats[j].num_vars},
                                       {"samples", batch_stats[j].raw_samples},
                                       {"distinct_samples", batch_stats[j].distinct_samples},
                                       {"min_energy", batch_stats[j].min_energy},
                                       {"temperature", batch_stats[j].temperature}});
                pair_reports.push_back(
                    {{"classes", {pair.first, pair.second}}, {"batches", batches}});
            }
        }
    }

    if (report) {
        (*report)["config"] = cfg.to_json();
        (*report)["model_type"] = model.type == Model::Type::ensemble ? "ensemble" : "ovo";
        (*report)["classes"] = classes;
        (*report)["num_samples"] = data.num_samples;
        (*report)["num_features"] = data.num_features;
        (*report)["pairs"] = pair_reports;
    }
    return model;
}

long predict_model(const Model& model, const double* x, long num_features) {
    if (model.type == Model::Type::ensemble) {
        const int sign = predict_ensemble(model.ensemble, x, num_features);
        return sign > 0 ? model.positive_label : model.negative_label;
    }
    return predict_ovo(model.ovo, x, num_features);
}

std::vector<long> predict_dataset(const Model& model, const Dataset& data) {
    validate(data);
    if (data.num_features != model.num_features())
        raise(ErrorCode::invalid_argument,
              "data has " + std::to_string(data.num_features) + " features, model expects " +
                  std::to_string(model.num_features()));
    std::vector<long> predictions(data.num_samples);
    for (long i = 0; i < data.num_samples; ++i)
        predictions[i] = predict_model(model, data.row(i), data.num_features);
    return predictions;
}

double model_decision(const Model& model, const double* x, long num_features) {
    if (model.type == Model::Type::ensemble)
        return ensemble_margin(model.ensemble, x, num_features);
    return static_cast<double>(predict_ovo(model.ovo, x, num_features));
}

MetricsReport evaluate_model(const Model& model, const Dataset& data,
                             std::optional<long> positive_class) {
    const auto predictions = predict_dataset(model, data);
    if (model.type == Model::Type::ovo) return macro_metrics(data.labels, predictions);
    const long positive = positive_class.value_or(model.positive_label);
    return binary_metrics(data.labels, predictions, positive);
}

json metrics_to_json(const MetricsReport& report) {
    json doc;
    doc["accuracy"] = report.accuracy;
    doc["precision"] = report.precision;
    doc["recall"] = report.recall;
    doc["f1"] = report.f1;
    doc["averaging"] = report.macro ? "macro" : "binary";
    if (!report.macro) doc["positive_class"] = report.positive_class;
    doc["zero_division"] = report.zero_division;
    return doc;
}

std::string metrics_table(const MetricsReport& report) {
    std::ostringstream out;
    char line[64];
    std::snprintf(line, sizeof line, "%-10s %8.4f\n", "Accuracy", report.accuracy);
    out << line;
    std::snprintf(line, sizeof line, "%-10s %8.4f\n", "Precision", report.precision);
    out << line;
    std::snprintf(line, sizeof line, "%-10s %8.4f\n", "Recall", report.recall);
    out << line;
    std::snprintf(line, sizeof line, "%-10s %8.4f\n", "F1 Score", report.f1);
    out << line;
    return out.str();
}

namespace {

json binary_model_to_json(const BinaryModel& model) {
    json doc;
    doc["alphas"] = model.alphas;
    doc["bias"] = model.bias;
    doc["kernel"] = kernel_to_json(model.encoding.kernel);
    doc["encoding"] = {{"base", model.encoding.base},
                       {"bits", model.encoding.bits},
                       {"penalty", model.encoding.penalty}};
    doc["num_samples"] = model.num_samples;
    doc["num_features"] = model.num_features;
    doc["support_features"] = model.support_features;
    doc["support_labels"] = model.support_labels;
    doc["provenance"] = {{"sampler_info", model.sampler_info},
                         {"temperature", model.temperature}};
    return doc;
}

BinaryModel binary_model_from_json(const json& doc) {
    BinaryModel model;
    model.alphas = doc.at("alphas").get<std::vector<double>>();
    model.bias = doc.at("bias").get<double>();
    model.encoding.kernel = kernel_from_json(doc.at("kernel"));
    const auto& enc = doc.at("encoding");
    model.encoding.base = enc.at("base").get<long>();
    model.encoding.bits = enc.at("bits").get<long>();
    model.encoding.penalty = enc.at("penalty").get<double>();
    model.num_samples = doc.at("num_samples").get<long>();
    model.num_features = doc.at("num_features").get<long>();
    model.support_features = doc.at("support_features").get<std::vector<double>>();
    model.support_labels = doc.at("support_labels").get<std::vector<int>>();
    if (doc.contains("provenance")) {
        model.sampler_info = doc.at("provenance").value("sampler_info", std::string());
        model.temperature = doc.at("provenance").value("temperature", 0.0);
    }
    model.encoding.validate();
    if (model.num_samples < 1 || model.num_features < 1 ||
        static_cast<long>(model.alphas.size()) != model.num_samples ||
        static_cast<long>(model.support_labels.size()) != model.num_samples ||
        static_cast<long>(model.support_features.size()) !=
            model.num_samples * model.num_features)
        raise(ErrorCode::parse, "model document has inconsistent shapes");
    for (int y : model.support_labels)
        if (y != 1 && y != -1) raise(ErrorCode::parse, "support labels must be +1 or -1");
    for (double a : model.alphas)
        if (!std::isfinite(a) || a < -1e-9)
            raise(ErrorCode::parse, "model multipliers must be finite and nonnegative");
    if (!std::isfinite(model.bias)) raise(ErrorCode::parse, "model bias must be finite");
    return model;
}

json ensemble_to_json(const EnsembleModel& model) {
    json doc;
    json members = json::array();
    for (const auto& member : model.members) members.push_back(binary_model_to_json(member));
    doc["members"] = std::move(members);
    doc["batch_config"] = {{"batch_size", model.batch_config.batch_size},
                           {"shuffle_seed", model.batch_config.shuffle_seed},
                           {"stratified", model.batch_config.stratified}};
    return doc;
}

EnsembleModel ensemble_from_json(const json& doc) {
    EnsembleModel model;
    for (const auto& entry : doc.at("members"))
        model.members.push_back(binary_model_from_json(entry));
    if (model.members.empty()) raise(ErrorCode::parse, "ensemble has no members");
    const auto& batch = doc.at("batch_config");
    model.batch_config.batch_size = batch.at("batch_size").get<long>();
    model.batch_config.shuffle_seed = batch.at("shuffle_seed").get<uint64_t>();
    model.batch_config.stratified = batch.at("stratified").get<bool>();
    const long d = model.members.front().num_features;
    for (const auto& member : model.members)
        if (member.num_features != d)
            raise(ErrorCode::parse, "ensemble members disagree on feature dimension");
    return model;
}

} // namespace

json model_to_json(const Model& model) {
    json doc;
    doc["format"] = "qsvm-model";
    doc["version"] = 1;
    if (model.type == Model::Type::ensemble) {
        doc["type"] = "ensemble";
        doc["positive_label"] = model.positive_label;
        doc["negative_label"] = model.negative_label;
        doc["ensemble"] = ensemble_to_json(model.ensemble);
    } else {
        doc["type"] = "ovo";
        doc["classes"] = model.ovo.classes;
        json pairs = json::array();
        for (const auto& [pair, ensemble] : model.ovo.pair_models)
            pairs.push_back({{"class_i", pair.first},
                             {"class_j", pair.second},
                             {"ensemble", ensemble_to_json(ensemble)}});
        doc["pairs"] = std::move(pairs);
    }
    return doc;
}

Model model_from_json(const json& doc) {
    Model model;
    try {
        if (doc.value("format", std::string()) != "qsvm-model")
            raise(ErrorCode::parse, "not a model document");
        const std::string type = doc.at("type").get<std::string>();
        if (type == "ensemble") {
            model.type = Model::Type::ensemble;
            model.positive_label = doc.at("positive_label").get<long>();
            model.negative_label = doc.at("negative_label").get<long>();
            model.ensemble = ensemble_from_json(doc.at("ensemble"));
        } else if (type == "ovo") {
            model.type = Model::Type::ovo;
            model.ovo.classes = doc.at("classes").get<std::vector<long>>();
            for (const auto& entry : doc.at("pairs")) {
                const long i = entry.at("class_i").get<long>();
                const long j = entry.at("class_j").get<long>();
                if (i >= j) raise(ErrorCode::parse, "pair keys must satisfy class_i < class_j");
                model.ovo.pair_models[{i, j}] = ensemble_from_json(entry.at("ensemble"));
            }
            const size_t k = model.ovo.classes.size();
            if (model.ovo.pair_models.size() != k * (k - 1) / 2)
                raise(ErrorCode::parse, "pair model count does not match the class count");
        } else {
            raise(ErrorCode::parse, "unknown model type '" + type + "'");
        }
    } catch (const json::exception& e) {
        raise(ErrorCode::parse, std::string("malformed model document: ") + e.what());
    }
    return model;
}

void save_model(const Model& model, const std::string& path) {
    write_file(path, model_to_json(model).dump(2) + "\n");
}

Model load_model(const std::string& path) {
    json doc;
    try {
        doc = json::parse(read_file(path));
    } catch (const json::exception& e) {
        raise(ErrorCode::parse, "'" + path + "' is not valid JSON: " + e.what());
    }
    return model_from_json(doc);
}

std::string read_file(const std::string& path) {
    std::ifstream file(path, std::ios::binary);
    if (!file) raise(ErrorCode::io, "cannot open '" + path + "'");
    std::ostringstream buffer;
    buffer << file.rdbuf();
    if (!file && !file.eof()) raise(ErrorCode::io, "read from '" + path + "' failed");
    return buffer.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream file(path, std::ios::binary);
    if (!file) raise(ErrorCode::io, "cannot open '" + path + "' for writing");
    file << content;
    if (!file) raise(ErrorCode::io, "write to '" + path + "' failed");
}

} // namespace qsvm
