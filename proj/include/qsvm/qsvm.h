/*
 * qsvm - SVM training by QUBO sampling with Boltzmann-weighted aggregation.
 *
 * C interface to the shared library. All objects are opaque handles created
 * and released through these functions; every fallible call returns a
 * qsvm_status and leaves a human-readable message in qsvm_last_error().
 * Strings returned through char** out-parameters are heap-allocated and
 * must be released with qsvm_string_free().
 *
 * Configuration documents are JSON; every field is optional. The same
 * document shape is shared by qsvm_train, qsvm_qubo_build,
 * qsvm_samples_anneal and qsvm_model_from_samples:
 *
 *   {
 *     "kernel":   {"kind": "gaussian"|"linear"|"polynomial",
 *                  "gamma": 1.0, "degree": 3, "coef0": 0.0},
 *     "encoding": {"base": 2, "bits": 2, "penalty": 0.0},
 *     "sampler":  {"type": "sa"|"exact", "num_reads": 100,
 *                  "sweeps_per_read": 1000, "t_initial": "auto",
 *                  "t_final": 0.01, "schedule": "geometric", "seed": 0,
 *                  "max_vars": 24},
 *     "boltzmann": {"temperature": "auto", "box_parameter": "auto"},
 *     "aggregation": "prob"|"best",
 *     "batch":    {"batch_size": "auto", "shuffle_seed": 0,
 *                  "stratified": false},
 *     "variable_budget": 550,
 *     "threads": 0
 *   }
 */

#ifndef QSVM_H
#define QSVM_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32) || defined(__CYGWIN__)
#  if defined(QSVM_BUILD_SHARED)
#    define QSVM_API __declspec(dllexport)
#  elif defined(QSVM_STATIC)
#    define QSVM_API
#  else
#    define QSVM_API __declspec(dllimport)
#  endif
#else
#  if defined(__GNUC__) && __GNUC__ >= 4
#    define QSVM_API __attribute__((visibility("default")))
#  else
#    define QSVM_API
#  endif
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum qsvm_status {
    QSVM_OK = 0,
    QSVM_ERROR_INVALID_ARGUMENT = 1, /* bad data, bad config, dimension mismatch */
    QSVM_ERROR_IO = 2,               /* file open/read/write failure */
    QSVM_ERROR_PARSE = 3,            /* malformed CSV / JSON / document */
    QSVM_ERROR_CAPACITY = 4,         /* variable budget or enumeration cap exceeded */
    QSVM_ERROR_INTEGRITY = 5,        /* imported energies fail revalidation */
    QSVM_ERROR_PROVENANCE = 6,       /* sample set belongs to a different problem */
    QSVM_ERROR_INTERNAL = 7
} qsvm_status;

typedef struct qsvm_dataset qsvm_dataset; /* labeled feature matrix */
typedef struct qsvm_qubo qsvm_qubo;       /* built QUBO problem */
typedef struct qsvm_samples qsvm_samples; /* set of sampled solutions */
typedef struct qsvm_model qsvm_model;     /* trained classifier */

QSVM_API const char* qsvm_version(void);

/* Message for the most recent failure on this thread. */
QSVM_API const char* qsvm_last_error(void);

QSVM_API void qsvm_string_free(char* text);

/* ---- datasets -------------------------------------------------------- */

/* Copies a row-major feature matrix and its labels. */
QSVM_API qsvm_status qsvm_dataset_create(const double* features, const long* labels,
                                         long num_samples, long num_features,
                                         qsvm_dataset** out);

/* options_json (optional): {"has_header": false, "label_column": -1,
 * "delimiter": ","}; label_column -1 selects the last column. */
QSVM_API qsvm_status qsvm_dataset_load_csv(const char* path, const char* options_json,
                                           qsvm_dataset** out);

QSVM_API qsvm_status qsvm_dataset_save_csv(const qsvm_dataset* data, const char* path);

QSVM_API long qsvm_dataset_num_samples(const qsvm_dataset* data);
QSVM_API long qsvm_dataset_num_features(const qsvm_dataset* data);

/* Copies features/labels into caller-provided buffers sized
 * num_samples*num_features and num_samples. */
QSVM_API qsvm_status qsvm_dataset_copy_features(const qsvm_dataset* data, double* out);
QSVM_API qsvm_status qsvm_dataset_copy_labels(const qsvm_dataset* data, long* out);

/* Seeded shuffle then split; |test| = round(test_fraction * N). */
QSVM_API qsvm_status qsvm_dataset_split(const qsvm_dataset* data, double test_fraction,
                                        uint64_t seed, int stratified, qsvm_dataset** out_train,
                                        qsvm_dataset** out_test);

/* Disjoint seeded subsets of the requested sizes. */
QSVM_API qsvm_status qsvm_dataset_subsample(const qsvm_dataset* data, long n_train, long n_test,
                                            uint64_t seed, qsvm_dataset** out_train,
                                            qsvm_dataset** out_test);

/* Per-feature [0,1] scaling fitted on `reference`, applied to `input`. */
QSVM_API qsvm_status qsvm_dataset_scale_minmax(const qsvm_dataset* reference,
                                               const qsvm_dataset* input, qsvm_dataset** out);

QSVM_API void qsvm_dataset_free(qsvm_dataset* data);

/* ---- training and prediction ----------------------------------------- */

/* Trains on a labeled dataset: two classes yield an averaged batch
 * ensemble, three or more a one-vs-one model. out_report_json (optional)
 * receives the resolved configuration and per-batch sampling statistics. */
QSVM_API qsvm_status qsvm_train(const qsvm_dataset* train, const char* config_json,
                                qsvm_model** out_model, char** out_report_json);

QSVM_API qsvm_status qsvm_model_save(const qsvm_model* model, const char* path);
QSVM_API qsvm_status qsvm_model_load(const char* path, qsvm_model** out);

/* {"type": "ensemble"|"ovo", "num_features": d, "classes": [...]} */
QSVM_API qsvm_status qsvm_model_info(const qsvm_model* model, char** out_json);

QSVM_API qsvm_status qsvm_model_predict(const qsvm_model* model, const double* x,
                                        long num_features, long* out_label);

/* One label per dataset row into a buffer of length num_samples. */
QSVM_API qsvm_status qsvm_model_predict_dataset(const qsvm_model* model,
                                                const qsvm_dataset* data, long* out_labels);

/* Ensemble vote margin in [-1,1] for binary models; predicted class for
 * one-vs-one models. */
QSVM_API qsvm_status qsvm_model_decision(const qsvm_model* model, const double* x,
                                         long num_features, double* out_value);

/* options_json (optional): {"positive_class": 1}. Binary models report
 * metrics against the positive class (default: the class mapped to +1);
 * one-vs-one models report macro averages. */
QSVM_API qsvm_status qsvm_model_evaluate(const qsvm_model* model, const qsvm_dataset* data,
                                         const char* options_json, char** out_metrics_json);

/* Decision values on a width x height grid over a 2-D feature box, written
 * as "x0,x1,value" CSV rows (row-major, x1 fastest). Models trained on
 * other dimensions are rejected. */
QSVM_API qsvm_status qsvm_model_decision_grid(const qsvm_model* model, double x0_min,
                                              double x0_max, double x1_min, double x1_max,
                                              long width, long height, const char* path);

QSVM_API void qsvm_model_free(qsvm_model* model);

/* ---- QUBO and sample-set round trip ----------------------------------- */

/* Builds the QUBO for a two-class dataset (the greater label maps to +1).
 * Uses the "kernel", "encoding" and "variable_budget" config sections. */
QSVM_API qsvm_status qsvm_qubo_build(const qsvm_dataset* train, const char* config_json,
                                     qsvm_qubo** out);

QSVM_API long qsvm_qubo_num_vars(const qsvm_qubo* qubo);
QSVM_API qsvm_status qsvm_qubo_digest(const qsvm_qubo* qubo, char** out_digest);

/* Writes the coefficient text file ("qubo <num_vars> <num_nonzero>" header,
 * then "p q value" lines, upper-triangular, 17 significant digits) and a
 * JSON metadata document (encoding, kernel, labels, sign convention,
 * digest). */
QSVM_API qsvm_status qsvm_qubo_export(const qsvm_qubo* qubo, const char* qubo_path,
                                      const char* meta_path);

QSVM_API void qsvm_qubo_free(qsvm_qubo* qubo);

QSVM_API qsvm_status qsvm_samples_anneal(const qsvm_qubo* qubo, const char* config_json,
                                         qsvm_samples** out);

QSVM_API qsvm_status qsvm_samples_enumerate(const qsvm_qubo* qubo, long max_vars,
                                            qsvm_samples** out);

/* Validated import: digest must match `qubo`, every declared energy must
 * match local recomputation within 1e-6. */
QSVM_API qsvm_status qsvm_samples_import(const qsvm_qubo* qubo, const char* path,
                                         qsvm_samples** out);

QSVM_API qsvm_status qsvm_samples_export(const qsvm_samples* samples, const char* path);

/* {"count": n, "distinct": m, "min_energy": e, "sampler_info": "..."} */
QSVM_API qsvm_status qsvm_samples_info(const qsvm_samples* samples, char** out_json);

QSVM_API void qsvm_samples_free(qsvm_samples* samples);

/* Aggregates a sample set for `qubo` into a single-batch model over the
 * dataset the problem was built from. Uses the "boltzmann" and
 * "aggregation" config sections. */
QSVM_API qsvm_status qsvm_model_from_samples(const qsvm_dataset* train, const qsvm_qubo* qubo,
                                             const qsvm_samples* samples,
                                             const char* config_json, qsvm_model** out_model,
                                             char** out_report_json);

/* ---- metrics ----------------------------------------------------------- */

/* options_json (optional): {"averaging": "binary"|"macro",
 * "positive_class": 1}. */
QSVM_API qsvm_status qsvm_metrics(const long* y_true, const long* y_pred, long count,
                                  const char* options_json, char** out_json);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* QSVM_H */
