/*
 * emoarc C API.
 *
 * Every object is an opaque handle owned by the caller and released with the
 * matching *_free function. Functions return an emoarc_status; on failure
 * emoarc_last_error() describes the problem (thread-local, valid until the
 * next failing call on the same thread). Strings are UTF-8.
 */
#ifndef EMOARC_EMOARC_H
#define EMOARC_EMOARC_H

#include <stddef.h>
#include <stdint.h>

#if defined(EMOARC_BUILDING_LIBRARY)
#define EMOARC_API __attribute__((visibility("default")))
#else
#define EMOARC_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* Status codes double as the CLI's exit codes. */
typedef enum emoarc_status {
  EMOARC_OK = 0,
  EMOARC_ERR_IO = 2,
  EMOARC_ERR_FORMAT = 3,
  EMOARC_ERR_DEGENERATE_ARC = 4,
  EMOARC_ERR_EMPTY_WINDOW = 5,
  EMOARC_ERR_INVALID_ARGUMENT = 6,
  EMOARC_ERR_INTERNAL = 9
} emoarc_status;

typedef struct emoarc_lexicon emoarc_lexicon;
typedef struct emoarc_corpus emoarc_corpus;
typedef struct emoarc_arc emoarc_arc;
typedef struct emoarc_reports emoarc_reports;

EMOARC_API const char* emoarc_version(void);
EMOARC_API const char* emoarc_last_error(void);
EMOARC_API const char* emoarc_status_name(emoarc_status status);

/* ---- text ---------------------------------------------------------------- */

/* Writes the space-joined tokens of `text` plus a NUL into `buffer`.
 * `*required` receives the needed capacity; a too-small buffer yields
 * EMOARC_ERR_INVALID_ARGUMENT with nothing written. `buffer` may be NULL when
 * `capacity` is 0. */
EMOARC_API emoarc_status emoarc_tokenize(const char* text, char* buffer, size_t capacity, size_t* required);

/* ---- lexicons ------------------------------------------------------------ */

typedef enum emoarc_lexicon_format {
  EMOARC_LEXICON_TWO_COLUMN = 0,
  EMOARC_LEXICON_NRC_EMOLEX = 1,
  EMOARC_LEXICON_NRC_VAD_COLUMN = 2
} emoarc_lexicon_format;

typedef enum emoarc_lexicon_granularity {
  EMOARC_LEXICON_GRANULARITY_AUTO = 0,
  EMOARC_LEXICON_CATEGORICAL = 1,
  EMOARC_LEXICON_CONTINUOUS = 2
} emoarc_lexicon_granularity;

typedef enum emoarc_threshold_mode {
  EMOARC_THRESHOLD_AUTO = 0,
  EMOARC_THRESHOLD_MAGNITUDE = 1,
  EMOARC_THRESHOLD_SIGNED = 2
} emoarc_threshold_mode;

typedef struct emoarc_lexicon_options {
  emoarc_lexicon_format format;
  const char* emotion;    /* emotion / dimension to select; may be NULL */
  int has_range;          /* nonzero: range_lo/range_hi are declared */
  double range_lo;
  double range_hi;
  emoarc_lexicon_granularity granularity;
  const double* labels;   /* categorical label set, may be NULL */
  size_t n_labels;
  const char* provenance; /* may be NULL */
} emoarc_lexicon_options;

EMOARC_API void emoarc_lexicon_options_init(emoarc_lexicon_options* options);
EMOARC_API emoarc_status emoarc_lexicon_load(const char* path, const emoarc_lexicon_options* options,
                                             emoarc_lexicon** out);
EMOARC_API emoarc_status emoarc_lexicon_save(const emoarc_lexicon* lexicon, const char* path);
EMOARC_API void emoarc_lexicon_free(emoarc_lexicon* lexicon);
EMOARC_API size_t emoarc_lexicon_size(const emoarc_lexicon* lexicon);
/* Report label, valid for the handle's lifetime. */
EMOARC_API const char* emoarc_lexicon_id(const emoarc_lexicon* lexicon);
EMOARC_API emoarc_status emoarc_lexicon_stats(const emoarc_lexicon* lexicon, size_t* rows, size_t* duplicates,
                                              size_t* multiword_rejected);
EMOARC_API emoarc_status emoarc_lexicon_lookup(const emoarc_lexicon* lexicon, const char* term, int* found,
                                               double* score);
EMOARC_API emoarc_status emoarc_lexicon_threshold(const emoarc_lexicon* lexicon, double tau,
                                                  emoarc_threshold_mode mode, emoarc_lexicon** out);

/* ---- corpora ------------------------------------------------------------- */

typedef enum emoarc_label_kind { EMOARC_LABELS_CATEGORICAL = 0, EMOARC_LABELS_CONTINUOUS = 1 } emoarc_label_kind;

typedef struct emoarc_label_scheme {
  emoarc_label_kind kind;
  const double* labels; /* categorical labels */
  size_t n_labels;
  double lo;            /* continuous range */
  double hi;
} emoarc_label_scheme;

typedef enum emoarc_order {
  EMOARC_ORDER_AS_GIVEN = 0,
  EMOARC_ORDER_BY_TIMESTAMP = 1,
  EMOARC_ORDER_SEEDED_SHUFFLE = 2
} emoarc_order;

typedef struct emoarc_corpus_options {
  const char* text_column;      /* default "text" */
  const char* label_column;     /* default "label" */
  const char* id_column;        /* NULL: row index */
  const char* timestamp_column; /* NULL: none */
  const char* format;           /* "tsv", "csv", "jsonl"; NULL: by extension */
  const char* const* label_names; /* optional textual label map */
  const double* label_values;
  size_t n_label_map;
  emoarc_order order;
  uint64_t shuffle_seed;
  const char* emotion;
} emoarc_corpus_options;

EMOARC_API void emoarc_corpus_options_init(emoarc_corpus_options* options);
EMOARC_API emoarc_status emoarc_corpus_load(const char* path, const emoarc_corpus_options* options,
                                            const emoarc_label_scheme* scheme, emoarc_corpus** out);
EMOARC_API emoarc_status emoarc_corpus_save(const emoarc_corpus* corpus, const char* path);
EMOARC_API void emoarc_corpus_free(emoarc_corpus* corpus);
EMOARC_API size_t emoarc_corpus_size(const emoarc_corpus* corpus);
/* 0 for continuous schemes. */
EMOARC_API size_t emoarc_corpus_num_classes(const emoarc_corpus* corpus);
EMOARC_API const char* emoarc_corpus_name(const emoarc_corpus* corpus);
EMOARC_API const char* emoarc_corpus_emotion(const emoarc_corpus* corpus);
EMOARC_API emoarc_status emoarc_corpus_gold(const emoarc_corpus* corpus, double* out, size_t n);
EMOARC_API emoarc_status emoarc_corpus_relabel_to_unit(const emoarc_corpus* corpus, emoarc_corpus** out);

/* ---- arcs ---------------------------------------------------------------- */

typedef enum emoarc_oov_policy { EMOARC_OOV_DROP_NA = 0, EMOARC_OOV_ZERO = 1 } emoarc_oov_policy;

typedef enum emoarc_scoring {
  EMOARC_SCORING_INSTANCE_MEAN = 0,
  EMOARC_SCORING_WINDOW_WORD_POOL = 1
} emoarc_scoring;

typedef struct emoarc_arc_config {
  size_t bin_size;
  size_t stride;
  emoarc_oov_policy oov;
  emoarc_scoring scoring;
  int has_threshold;
  double tau;
  emoarc_threshold_mode threshold_mode;
} emoarc_arc_config;

EMOARC_API void emoarc_arc_config_init(emoarc_arc_config* config);
EMOARC_API emoarc_status emoarc_gold_arc(const emoarc_corpus* corpus, const emoarc_arc_config* config,
                                         emoarc_arc** out);
EMOARC_API emoarc_status emoarc_predicted_arc(const emoarc_corpus* corpus, const emoarc_lexicon* lexicon,
                                              const emoarc_arc_config* config, emoarc_arc** out);
EMOARC_API emoarc_status emoarc_arc_standardize(const emoarc_arc* arc, emoarc_arc** out);
EMOARC_API void emoarc_arc_free(emoarc_arc* arc);
EMOARC_API size_t emoarc_arc_size(const emoarc_arc* arc);
EMOARC_API const double* emoarc_arc_values(const emoarc_arc* arc);
EMOARC_API const size_t* emoarc_arc_window_starts(const emoarc_arc* arc);
EMOARC_API int emoarc_arc_is_standardized(const emoarc_arc* arc);
/* CSV plus JSON sidecar; provenance_json is a JSON object or NULL. */
EMOARC_API emoarc_status emoarc_arc_write(const emoarc_arc* arc, const char* csv_path, const char* provenance_json);
EMOARC_API emoarc_status emoarc_arc_read(const char* csv_path, emoarc_arc** out);

EMOARC_API emoarc_status emoarc_spearman(const emoarc_arc* a, const emoarc_arc* b, double* rho);
EMOARC_API emoarc_status emoarc_spearman_values(const double* a, const double* b, size_t n, double* rho);

/* ---- sweeps and the oracle ----------------------------------------------- */

typedef struct emoarc_threshold {
  int enabled; /* 0: cell without thresholding */
  double tau;
  emoarc_threshold_mode mode;
} emoarc_threshold;

/* NULL/empty lists fall back to the defaults: bins 1,10,50,100,200,300, both
 * OOV policies, instance_mean scoring, no threshold, stride 1. */
typedef struct emoarc_sweep_grid {
  const size_t* bin_sizes;
  size_t n_bin_sizes;
  const emoarc_oov_policy* oov_policies;
  size_t n_oov_policies;
  const emoarc_scoring* scorings;
  size_t n_scorings;
  const emoarc_threshold* thresholds;
  size_t n_thresholds;
  size_t stride;
} emoarc_sweep_grid;

EMOARC_API void emoarc_sweep_grid_init(emoarc_sweep_grid* grid);
EMOARC_API emoarc_status emoarc_sweep_lexo(const emoarc_corpus* corpus, const emoarc_lexicon* const* lexicons,
                                           size_t n_lexicons, const emoarc_sweep_grid* grid, unsigned workers,
                                           emoarc_reports** out);

typedef struct emoarc_oracle_config {
  uint64_t seed;
  size_t trials;
  int distance_weighted; /* 0: uniform errors */
} emoarc_oracle_config;

EMOARC_API void emoarc_oracle_config_init(emoarc_oracle_config* config);
EMOARC_API emoarc_status emoarc_simulate_labels(const emoarc_corpus* corpus, double accuracy,
                                                const emoarc_oracle_config* config, size_t trial, double* out,
                                                size_t n);
EMOARC_API emoarc_status emoarc_oracle_curve(const emoarc_corpus* corpus, const double* accuracies,
                                             size_t n_accuracies, const size_t* bins, size_t n_bins, size_t stride,
                                             const emoarc_oracle_config* config, unsigned workers,
                                             emoarc_reports** out);

/* Borrowed view of one report; strings live as long as the reports handle. */
typedef struct emoarc_report_view {
  const char* corpus;
  const char* emotion;
  const char* method;
  const char* lexicon;
  int has_accuracy;
  double accuracy;
  size_t bin_size;
  size_t stride;
  emoarc_oov_policy oov;
  emoarc_scoring scoring;
  int has_threshold;
  double tau;
  size_t n_windows;
  size_t trials;
  double rho; /* NaN when the cell failed */
  double rho_min;
  double rho_max;
  const char* status;
  const char* message;
} emoarc_report_view;

/* One-row report comparing two aligned arcs. */
EMOARC_API emoarc_status emoarc_evaluate(const emoarc_arc* gold, const emoarc_arc* pred, emoarc_reports** out);
EMOARC_API size_t emoarc_reports_count(const emoarc_reports* reports);
EMOARC_API emoarc_status emoarc_reports_get(const emoarc_reports* reports, size_t index, emoarc_report_view* out);
/* Cells with status "error" (hard failures). */
EMOARC_API size_t emoarc_reports_hard_failures(const emoarc_reports* reports);
EMOARC_API emoarc_status emoarc_reports_write(const emoarc_reports* reports, const char* csv_path,
                                              const char* provenance_json);
EMOARC_API void emoarc_reports_free(emoarc_reports* reports);

/* ---- synthetic data ------------------------------------------------------ */

typedef struct emoarc_synth_spec {
  size_t n_instances;
  emoarc_label_scheme scheme; /* default: categorical -3..3 */
  size_t vocab_size;
  size_t noise_vocab_size;
  size_t tokens_per_instance;
  double label_signal;
  uint64_t seed;
  double drift_cycles;
  double drift_amplitude;
  double label_spread;
  size_t lexicon_noise_entries;
  double lexicon_noise_ceiling;
  size_t continuous_levels;
  const char* emotion;
} emoarc_synth_spec;

EMOARC_API void emoarc_synth_spec_init(emoarc_synth_spec* spec);
EMOARC_API emoarc_status emoarc_synth_generate(const emoarc_synth_spec* spec, emoarc_corpus** corpus,
                                               emoarc_lexicon** lexicon);

#ifdef __cplusplus
}
#endif

#endif /* EMOARC_EMOARC_H */
