/*
 * Copyright 2026 The Cortex Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/*
 * C interface to the cost-sensitive surrogate tree library.
 *
 * All objects are opaque handles released with the matching *_free call.
 * Every function that can fail returns a cortex_status; on failure the
 * message is available from cortex_last_error() on the calling thread until
 * the next failing call. Strings returned through char** are owned by the
 * caller and released with cortex_string_free.
 */

#ifndef CORTEX_CORTEX_H_
#define CORTEX_CORTEX_H_

#include <stddef.h>
#include <stdint.h>

#if defined(CORTEX_BUILDING_LIBRARY)
#define CORTEX_API __attribute__((visibility("default")))
#else
#define CORTEX_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum cortex_status {
  CORTEX_OK = 0,
  CORTEX_ERROR_CONFIG = 1,
  CORTEX_ERROR_DATA = 2,
  CORTEX_ERROR_ORACLE = 3,
  CORTEX_ERROR_INTERNAL = 4
} cortex_status;

typedef struct cortex_dataset cortex_dataset;
typedef struct cortex_cost_matrix cortex_cost_matrix;
typedef struct cortex_tree cortex_tree;
typedef struct cortex_ruleset cortex_ruleset;
typedef struct cortex_report cortex_report;

typedef struct cortex_tree_params {
  int max_depth;
  size_t min_samples_leaf;
  double min_gain;
  size_t max_thresholds; /* 0 = every midpoint */
} cortex_tree_params;

typedef struct cortex_metrics {
  double completeness;
  double correctness;
  double fidelity;
  double robustness;
  size_t num_rules;
  double average_rule_length;
} cortex_metrics;

CORTEX_API const char* cortex_last_error(void);
CORTEX_API const char* cortex_version(void);
CORTEX_API void cortex_string_free(char* s);

/* Datasets. Labels are class indices into the lexicographically sorted
 * class names. */
CORTEX_API cortex_status cortex_dataset_load_csv(const char* path, const char* target,
                                                 cortex_dataset** out);
CORTEX_API cortex_status cortex_dataset_parse_csv(const char* content, const char* target,
                                                  cortex_dataset** out);
CORTEX_API void cortex_dataset_free(cortex_dataset* data);
CORTEX_API size_t cortex_dataset_num_rows(const cortex_dataset* data);
CORTEX_API size_t cortex_dataset_num_features(const cortex_dataset* data);
CORTEX_API size_t cortex_dataset_num_classes(const cortex_dataset* data);
CORTEX_API const char* cortex_dataset_class_name(const cortex_dataset* data, size_t k);
CORTEX_API const char* cortex_dataset_feature_name(const cortex_dataset* data, size_t j);
CORTEX_API int cortex_dataset_label(const cortex_dataset* data, size_t i);
CORTEX_API const double* cortex_dataset_row(const cortex_dataset* data, size_t i);
CORTEX_API cortex_status cortex_dataset_split(const cortex_dataset* data, double train_fraction,
                                              uint64_t seed, int stratified,
                                              cortex_dataset** train, cortex_dataset** test);
/* Copy of `data` with labels replaced, e.g. by black-box predictions. */
CORTEX_API cortex_status cortex_dataset_with_labels(const cortex_dataset* data,
                                                    const int* labels, size_t n,
                                                    cortex_dataset** out);
CORTEX_API cortex_status cortex_dataset_to_csv(const cortex_dataset* data,
                                               const char* target_name, char** out);

/* Cost matrices, row = actual class, column = predicted class. */
CORTEX_API cortex_status cortex_cost_matrix_default(const cortex_dataset* data,
                                                    cortex_cost_matrix** out);
CORTEX_API cortex_status cortex_cost_matrix_from_values(const double* values, size_t k,
                                                        cortex_cost_matrix** out);
CORTEX_API cortex_status cortex_cost_matrix_load(const char* path, size_t expected_k,
                                                 cortex_cost_matrix** out);
CORTEX_API void cortex_cost_matrix_free(cortex_cost_matrix* m);
CORTEX_API size_t cortex_cost_matrix_num_classes(const cortex_cost_matrix* m);
CORTEX_API double cortex_cost_matrix_get(const cortex_cost_matrix* m, size_t actual,
                                         size_t predicted);

/* Trees. */
CORTEX_API cortex_tree_params cortex_tree_params_default(void);
CORTEX_API cortex_status cortex_tree_fit_cortex(const cortex_dataset* train,
                                                const cortex_cost_matrix* costs,
                                                const cortex_tree_params* params,
                                                cortex_tree** out);
CORTEX_API cortex_status cortex_tree_fit_weighted(const cortex_dataset* train,
                                                  const cortex_tree_params* params,
                                                  cortex_tree** out);
CORTEX_API void cortex_tree_free(cortex_tree* tree);
CORTEX_API cortex_status cortex_tree_predict(const cortex_tree* tree, const double* x,
                                             size_t num_features, int* label,
                                             double* probabilities, size_t num_classes);
CORTEX_API size_t cortex_tree_num_leaves(const cortex_tree* tree);
CORTEX_API int cortex_tree_depth(const cortex_tree* tree);
CORTEX_API cortex_status cortex_tree_to_text(const cortex_tree* tree, char** out);

/* Rules. cortex_ruleset_apply writes -1 to *label when no rule fires. */
CORTEX_API cortex_status cortex_rules_extract(const cortex_tree* tree, cortex_ruleset** out);
CORTEX_API void cortex_ruleset_free(cortex_ruleset* rules);
CORTEX_API size_t cortex_ruleset_size(const cortex_ruleset* rules);
CORTEX_API cortex_status cortex_ruleset_apply(const cortex_ruleset* rules, const double* x,
                                              size_t num_features, int* label);
CORTEX_API cortex_status cortex_ruleset_to_text(const cortex_ruleset* rules, char** out);
CORTEX_API cortex_status cortex_ruleset_to_json(const cortex_ruleset* rules, char** out);

/* Scores `rules` on `samples`; blackbox_labels has one entry per sample. */
CORTEX_API cortex_status cortex_evaluate(const cortex_ruleset* rules,
                                         const cortex_dataset* samples,
                                         const int* blackbox_labels, size_t n, double sigma,
                                         uint64_t seed, cortex_metrics* out);

/* Experiments. config_json uses the same keys as the CLI configuration file. */
CORTEX_API cortex_status cortex_experiment_run(const char* config_json, cortex_report** out);
CORTEX_API void cortex_report_free(cortex_report* report);
CORTEX_API size_t cortex_report_num_records(const cortex_report* report);
CORTEX_API cortex_status cortex_report_to_json(const cortex_report* report, char** out);
CORTEX_API cortex_status cortex_report_to_csv(const cortex_report* report, char** out);
CORTEX_API cortex_status cortex_report_to_text(const cortex_report* report, char** out);
/* formats: comma-separated subset of json,csv,text; NULL uses the
 * configuration's formats. */
CORTEX_API cortex_status cortex_report_write(const cortex_report* report, const char* out_dir,
                                             const char* formats);

#ifdef __cplusplus
}
#endif

#endif /* CORTEX_CORTEX_H_ */
