#include "emoarc/emoarc.h"

#include <cmath>
#include <limits>
#include <new>
#include <string>

#include "emoarc/arcgen.hpp"
#include "emoarc/error.hpp"
#include "emoarc/evaluate.hpp"
#include "emoarc/ingest.hpp"
#include "emoarc/lexstore.hpp"
#include "emoarc/oracle.hpp"
#include "emoarc/report.hpp"
#include "emoarc/synthgen.hpp"
#include "emoarc/textprep.hpp"

struct emoarc_lexicon {
  emoarc::EmotionLexicon lex;
  std::string id;
};

struct emoarc_corpus {
  emoarc::LabeledCorpus corpus;
};

struct emoarc_arc {
  emoarc::EmotionArc arc;
};

struct emoarc_reports {
  std::vector<emoarc::EvalReport> reports;
};

namespace {

using namespace emoarc;

thread_local std::string last_error;

emoarc_status code_for(ErrorCategory category) {
  switch (category) {
    case ErrorCategory::io: return EMOARC_ERR_IO;
    case ErrorCategory::format: return EMOARC_ERR_FORMAT;
    case ErrorCategory::degenerate_arc: return EMOARC_ERR_DEGENERATE_ARC;
    case ErrorCategory::empty_window: return EMOARC_ERR_EMPTY_WINDOW;
    case ErrorCategory::invalid_argument: return EMOARC_ERR_INVALID_ARGUMENT;
    case ErrorCategory::internal: return EMOARC_ERR_INTERNAL;
  }
  return EMOARC_ERR_INTERNAL;
}

emoarc_status set_error(emoarc_status status, std::string message) {
  last_error = std::move(message);
  return status;
}

template <typename Fn>
emoarc_status guarded(Fn&& fn) {
  try {
    fn();
    return EMOARC_OK;
  } catch (const Error& e) {
    return set_error(code_for(e.category()), e.what());
  } catch (const std::bad_alloc&) {
    return set_error(EMOARC_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return set_error(EMOARC_ERR_INTERNAL, e.what());
  }
}

void require(bool condition, const char* what) {
  if (!condition) fail(ErrorCategory::invalid_argument, what);
}

std::string str_or(const char* s, const char* fallback = "") { return s ? std::string(s) : std::string(fallback); }

ThresholdMode to_mode(emoarc_threshold_mode m) {
  switch (m) {
    case EMOARC_THRESHOLD_MAGNITUDE: return ThresholdMode::magnitude;
    case EMOARC_THRESHOLD_SIGNED: return ThresholdMode::signed_;
    default: return ThresholdMode::automatic;
  }
}

OovPolicy to_oov(emoarc_oov_policy p) { return p == EMOARC_OOV_ZERO ? OovPolicy::zero : OovPolicy::drop_na; }

ScoringGranularity to_scoring(emoarc_scoring s) {
  return s == EMOARC_SCORING_WINDOW_WORD_POOL ? ScoringGranularity::window_word_pool
                                              : ScoringGranularity::instance_mean;
}

ArcConfig to_config(const emoarc_arc_config* c) {
  ArcConfig out;
  if (!c) return out;
  out.bin_size = c->bin_size;
  out.stride = c->stride;
  out.oov = to_oov(c->oov);
  out.granularity = to_scoring(c->scoring);
  if (c->has_threshold) out.threshold = ThresholdSpec{c->tau, to_mode(c->threshold_mode)};
  return out;
}

LabelScheme to_scheme(const emoarc_label_scheme* s) {
  require(s != nullptr, "label scheme is NULL");
  if (s->kind == EMOARC_LABELS_CONTINUOUS) return LabelScheme::continuous(s->lo, s->hi);
  require(s->labels != nullptr || s->n_labels == 0, "label array is NULL");
  return LabelScheme::categorical(std::vector<double>(s->labels, s->labels + s->n_labels));
}

emoarc_lexicon* wrap(EmotionLexicon lex) {
  auto* h = new emoarc_lexicon{std::move(lex), {}};
  h->id = h->lex.id();
  return h;
}

const double default_scheme_labels[] = {-3, -2, -1, 0, 1, 2, 3};

}  // namespace

extern "C" {

const char* emoarc_version(void) { return "1.0.0"; }

const char* emoarc_last_error(void) { return last_error.c_str(); }

const char* emoarc_status_name(emoarc_status status) {
  switch (status) {
    case EMOARC_OK: return "ok";
    case EMOARC_ERR_IO: return "io";
    case EMOARC_ERR_FORMAT: return "format";
    case EMOARC_ERR_DEGENERATE_ARC: return "degenerate_arc";
    case EMOARC_ERR_EMPTY_WINDOW: return "empty_window";
    case EMOARC_ERR_INVALID_ARGUMENT: return "invalid_argument";
    case EMOARC_ERR_INTERNAL: return "internal";
  }
  return "internal";
}

emoarc_status emoarc_tokenize(const char* text, char* buffer, size_t capacity, size_t* required) {
  return guarded([&] {
    require(text != nullptr, "text is NULL");
    std::string joined;
    for (const auto& tok : tokenize(text)) {
      if (!joined.empty()) joined += ' ';
      joined += tok;
    }
    if (required) *required = joined.size() + 1;
    require(capacity >= joined.size() + 1 && buffer != nullptr, "token buffer too small");
    joined.copy(buffer, joined.size());
    buffer[joined.size()] = '\0';
  });
}

void emoarc_lexicon_options_init(emoarc_lexicon_options* o) {
  if (!o) return;
  *o = emoarc_lexicon_options{};
  o->format = EMOARC_LEXICON_TWO_COLUMN;
  o->granularity = EMOARC_LEXICON_GRANULARITY_AUTO;
}

emoarc_status emoarc_lexicon_load(const char* path, const emoarc_lexicon_options* o, emoarc_lexicon** out) {
  return guarded([&] {
    require(path && o && out, "NULL argument");
    LexiconLoadOptions opts;
    switch (o->format) {
      case EMOARC_LEXICON_NRC_EMOLEX: opts.format = LexiconFormat::nrc_emolex; break;
      case EMOARC_LEXICON_NRC_VAD_COLUMN: opts.format = LexiconFormat::nrc_vad_column; break;
      default: opts.format = LexiconFormat::two_column; break;
    }
    opts.emotion = str_or(o->emotion);
    if (o->has_range) {
      ScoreRange r{o->range_lo, o->range_hi, {}};
      if (o->labels) r.labels.assign(o->labels, o->labels + o->n_labels);
      opts.range = r;
    } else if (o->labels && o->n_labels) {
      require(false, "labels need an explicit range");
    }
    if (o->granularity == EMOARC_LEXICON_CATEGORICAL) opts.granularity = Granularity::categorical;
    if (o->granularity == EMOARC_LEXICON_CONTINUOUS) opts.granularity = Granularity::continuous;
    opts.provenance = str_or(o->provenance);
    *out = wrap(load_lexicon(path, opts));
  });
}

emoarc_status emoarc_lexicon_save(const emoarc_lexicon* lexicon, const char* path) {
  return guarded([&] {
    require(lexicon && path, "NULL argument");
    save_lexicon(lexicon->lex, path);
  });
}

void emoarc_lexicon_free(emoarc_lexicon* lexicon) { delete lexicon; }

size_t emoarc_lexicon_size(const emoarc_lexicon* lexicon) { return lexicon ? lexicon->lex.size() : 0; }

const char* emoarc_lexicon_id(const emoarc_lexicon* lexicon) { return lexicon ? lexicon->id.c_str() : ""; }

emoarc_status emoarc_lexicon_stats(const emoarc_lexicon* lexicon, size_t* rows, size_t* duplicates,
                                   size_t* multiword_rejected) {
  return guarded([&] {
    require(lexicon != nullptr, "lexicon is NULL");
    const auto& s = lexicon->lex.stats();
    if (rows) *rows = s.rows;
    if (duplicates) *duplicates = s.duplicates;
    if (multiword_rejected) *multiword_rejected = s.multiword_rejected;
  });
}

emoarc_status emoarc_lexicon_lookup(const emoarc_lexicon* lexicon, const char* term, int* found, double* score) {
  return guarded([&] {
    require(lexicon && term && found, "NULL argument");
    const auto s = lexicon->lex.lookup(term);
    *found = s.has_value();
    if (score) *score = s.value_or(std::numeric_limits<double>::quiet_NaN());
  });
}

emoarc_status emoarc_lexicon_threshold(const emoarc_lexicon* lexicon, double tau, emoarc_threshold_mode mode,
                                       emoarc_lexicon** out) {
  return guarded([&] {
    require(lexicon && out, "NULL argument");
    *out = wrap(threshold_lexicon(lexicon->lex, ThresholdSpec{tau, to_mode(mode)}));
  });
}

void emoarc_corpus_options_init(emoarc_corpus_options* o) {
  if (!o) return;
  *o = emoarc_corpus_options{};
  o->text_column = "text";
  o->label_column = "label";
  o->order = EMOARC_ORDER_AS_GIVEN;
}

emoarc_status emoarc_corpus_load(const char* path, const emoarc_corpus_options* o, const emoarc_label_scheme* scheme,
                                 emoarc_corpus** out) {
  return guarded([&] {
    require(path && o && out, "NULL argument");
    ColumnMapping mapping;
    mapping.text_column = str_or(o->text_column, "text");
    mapping.label_column = str_or(o->label_column, "label");
    mapping.id_column = str_or(o->id_column);
    mapping.timestamp_column = str_or(o->timestamp_column);
    if (o->format && *o->format) mapping.format = parse_corpus_format(o->format);
    for (size_t i = 0; i < o->n_label_map; ++i) {
      require(o->label_names && o->label_values && o->label_names[i], "label map arrays are NULL");
      mapping.label_map[o->label_names[i]] = o->label_values[i];
    }
    OrderPolicy order;
    if (o->order == EMOARC_ORDER_BY_TIMESTAMP) order = OrderPolicy::by_timestamp();
    if (o->order == EMOARC_ORDER_SEEDED_SHUFFLE) order = OrderPolicy::shuffled(o->shuffle_seed);
    *out = new emoarc_corpus{load_corpus(path, mapping, to_scheme(scheme), order, str_or(o->emotion))};
  });
}

emoarc_status emoarc_corpus_save(const emoarc_corpus* corpus, const char* path) {
  return guarded([&] {
    require(corpus && path, "NULL argument");
    save_corpus_tsv(corpus->corpus, path);
  });
}

void emoarc_corpus_free(emoarc_corpus* corpus) { delete corpus; }

size_t emoarc_corpus_size(const emoarc_corpus* corpus) { return corpus ? corpus->corpus.size() : 0; }

size_t emoarc_corpus_num_classes(const emoarc_corpus* corpus) { return corpus ? corpus->corpus.scheme().k() : 0; }

const char* emoarc_corpus_name(const emoarc_corpus* corpus) { return corpus ? corpus->corpus.name().c_str() : ""; }

const char* emoarc_corpus_emotion(const emoarc_corpus* corpus) {
  return corpus ? corpus->corpus.emotion().c_str() : "";
}

emoarc_status emoarc_corpus_gold(const emoarc_corpus* corpus, double* out, size_t n) {
  return guarded([&] {
    require(corpus && out, "NULL argument");
    require(n == corpus->corpus.size(), "output length must equal the corpus size");
    for (size_t i = 0; i < n; ++i) out[i] = corpus->corpus.instances()[i].gold;
  });
}

emoarc_status emoarc_corpus_relabel_to_unit(const emoarc_corpus* corpus, emoarc_corpus** out) {
  return guarded([&] {
    require(corpus && out, "NULL argument");
    *out = new emoarc_corpus{relabel_to_unit(corpus->corpus)};
  });
}

void emoarc_arc_config_init(emoarc_arc_config* c) {
  if (!c) return;
  *c = emoarc_arc_config{};
  c->bin_size = 1;
  c->stride = 1;
  c->oov = EMOARC_OOV_DROP_NA;
  c->scoring = EMOARC_SCORING_INSTANCE_MEAN;
  c->threshold_mode = EMOARC_THRESHOLD_AUTO;
}

emoarc_status emoarc_gold_arc(const emoarc_corpus* corpus, const emoarc_arc_config* config, emoarc_arc** out) {
  return guarded([&] {
    require(corpus && out, "NULL argument");
    *out = new emoarc_arc{gold_arc(corpus->corpus, to_config(config))};
  });
}

emoarc_status emoarc_predicted_arc(const emoarc_corpus* corpus, const emoarc_lexicon* lexicon,
                                   const emoarc_arc_config* config, emoarc_arc** out) {
  return guarded([&] {
    require(corpus && lexicon && out, "NULL argument");
    *out = new emoarc_arc{predicted_arc(corpus->corpus, lexicon->lex, to_config(config))};
  });
}

emoarc_status emoarc_arc_standardize(const emoarc_arc* arc, emoarc_arc** out) {
  return guarded([&] {
    require(arc && out, "NULL argument");
    *out = new emoarc_arc{standardize(arc->arc)};
  });
}

void emoarc_arc_free(emoarc_arc* arc) { delete arc; }

size_t emoarc_arc_size(const emoarc_arc* arc) { return arc ? arc->arc.size() : 0; }

const double* emoarc_arc_values(const emoarc_arc* arc) { return arc ? arc->arc.values.data() : nullptr; }

const size_t* emoarc_arc_window_starts(const emoarc_arc* arc) {
  return arc ? arc->arc.window_starts.data() : nullptr;
}

int emoarc_arc_is_standardized(const emoarc_arc* arc) { return arc && arc->arc.standardized; }

emoarc_status emoarc_arc_write(const emoarc_arc* arc, const char* csv_path, const char* provenance_json) {
  return guarded([&] {
    require(arc && csv_path, "NULL argument");
    write_arc(arc->arc, csv_path, provenance_json ? std::string_view(provenance_json) : std::string_view{});
  });
}

emoarc_status emoarc_arc_read(const char* csv_path, emoarc_arc** out) {
  return guarded([&] {
    require(csv_path && out, "NULL argument");
    *out = new emoarc_arc{read_arc(csv_path)};
  });
}

emoarc_status emoarc_spearman(const emoarc_arc* a, const emoarc_arc* b, double* rho) {
  return guarded([&] {
    require(a && b && rho, "NULL argument");
    *rho = spearman(a->arc, b->arc);
  });
}

emoarc_status emoarc_spearman_values(const double* a, const double* b, size_t n, double* rho) {
  return guarded([&] {
    require(a && b && rho, "NULL argument");
    *rho = spearman(std::span<const double>(a, n), std::span<const double>(b, n));
  });
}

void emoarc_sweep_grid_init(emoarc_sweep_grid* grid) {
  if (!grid) return;
  *grid = emoarc_sweep_grid{};
  grid->stride = 1;
}

emoarc_status emoarc_sweep_lexo(const emoarc_corpus* corpus, const emoarc_lexicon* const* lexicons,
                                size_t n_lexicons, const emoarc_sweep_grid* g, unsigned workers,
                                emoarc_reports** out) {
  return guarded([&] {
    require(corpus && out && (lexicons || n_lexicons == 0), "NULL argument");
    SweepGrid grid;
    if (g) {
      if (g->n_bin_sizes) grid.bin_sizes.assign(g->bin_sizes, g->bin_sizes + g->n_bin_sizes);
      if (g->n_oov_policies) {
        grid.oov_policies.clear();
        for (size_t i = 0; i < g->n_oov_policies; ++i) grid.oov_policies.push_back(to_oov(g->oov_policies[i]));
      }
      if (g->n_scorings) {
        grid.granularities.clear();
        for (size_t i = 0; i < g->n_scorings; ++i) grid.granularities.push_back(to_scoring(g->scorings[i]));
      }
      if (g->n_thresholds) {
        grid.thresholds.clear();
        for (size_t i = 0; i < g->n_thresholds; ++i) {
          const auto& t = g->thresholds[i];
          grid.thresholds.push_back(t.enabled ? std::optional(ThresholdSpec{t.tau, to_mode(t.mode)}) : std::nullopt);
        }
      }
      grid.stride = g->stride;
    }
    LexoMethod method;
    for (size_t i = 0; i < n_lexicons; ++i) {
      require(lexicons[i] != nullptr, "lexicon is NULL");
      method.lexicons.push_back(lexicons[i]->lex);
    }
    *out = new emoarc_reports{sweep(corpus->corpus, grid, method, workers)};
  });
}

void emoarc_oracle_config_init(emoarc_oracle_config* config) {
  if (!config) return;
  *config = emoarc_oracle_config{};
  config->trials = 20;
}

namespace {
OracleConfig to_oracle(const emoarc_oracle_config* c) {
  OracleConfig out;
  if (c) {
    out.seed = c->seed;
    out.trials = c->trials;
    out.error_model = c->distance_weighted ? ErrorModel::distance_weighted : ErrorModel::uniform;
  }
  return out;
}
}  // namespace

emoarc_status emoarc_simulate_labels(const emoarc_corpus* corpus, double accuracy, const emoarc_oracle_config* config,
                                     size_t trial, double* out, size_t n) {
  return guarded([&] {
    require(corpus && out, "NULL argument");
    require(n == corpus->corpus.size(), "output length must equal the corpus size");
    auto cfg = to_oracle(config);
    cfg.accuracy = accuracy;
    const auto labels = simulate_labels(corpus->corpus, cfg, trial);
    std::copy(labels.begin(), labels.end(), out);
  });
}

emoarc_status emoarc_oracle_curve(const emoarc_corpus* corpus, const double* accuracies, size_t n_accuracies,
                                  const size_t* bins, size_t n_bins, size_t stride, const emoarc_oracle_config* config,
                                  unsigned workers, emoarc_reports** out) {
  return guarded([&] {
    require(corpus && accuracies && bins && out, "NULL argument");
    require(n_accuracies > 0 && n_bins > 0, "accuracies and bins must be nonempty");
    *out = new emoarc_reports{oracle_curve(corpus->corpus, std::span<const double>(accuracies, n_accuracies),
                                           std::span<const std::size_t>(bins, n_bins), to_oracle(config), workers,
                                           stride)};
  });
}

emoarc_status emoarc_evaluate(const emoarc_arc* gold, const emoarc_arc* pred, emoarc_reports** out) {
  return guarded([&] {
    require(gold && pred && out, "NULL argument");
    *out = new emoarc_reports{{evaluate_pair(gold->arc, pred->arc)}};
  });
}

size_t emoarc_reports_count(const emoarc_reports* reports) { return reports ? reports->reports.size() : 0; }

emoarc_status emoarc_reports_get(const emoarc_reports* reports, size_t index, emoarc_report_view* out) {
  return guarded([&] {
    require(reports && out, "NULL argument");
    require(index < reports->reports.size(), "report index out of range");
    const auto& r = reports->reports[index];
    const double nan = std::numeric_limits<double>::quiet_NaN();
    *out = emoarc_report_view{};
    out->corpus = r.corpus.c_str();
    out->emotion = r.emotion.c_str();
    out->method = r.method.c_str();
    out->lexicon = r.lexicon.c_str();
    out->has_accuracy = r.accuracy.has_value();
    out->accuracy = r.accuracy.value_or(nan);
    out->bin_size = r.config.bin_size;
    out->stride = r.config.stride;
    out->oov = r.config.oov == OovPolicy::zero ? EMOARC_OOV_ZERO : EMOARC_OOV_DROP_NA;
    out->scoring = r.config.granularity == ScoringGranularity::window_word_pool ? EMOARC_SCORING_WINDOW_WORD_POOL
                                                                                : EMOARC_SCORING_INSTANCE_MEAN;
    out->has_threshold = r.config.threshold.has_value();
    out->tau = r.config.threshold ? r.config.threshold->tau : nan;
    out->n_windows = r.n_windows;
    out->trials = r.trials;
    out->rho = r.rho;
    out->rho_min = r.rho_min.value_or(nan);
    out->rho_max = r.rho_max.value_or(nan);
    out->status = to_string(r.status).data();  // static storage
    out->message = r.message.c_str();
  });
}

size_t emoarc_reports_hard_failures(const emoarc_reports* reports) {
  if (!reports) return 0;
  size_t n = 0;
  for (const auto& r : reports->reports) n += r.status == CellStatus::error;
  return n;
}

emoarc_status emoarc_reports_write(const emoarc_reports* reports, const char* csv_path, const char* provenance_json) {
  return guarded([&] {
    require(reports && csv_path, "NULL argument");
    write_reports(reports->reports, csv_path, provenance_json ? std::string_view(provenance_json) : std::string_view{});
  });
}

void emoarc_reports_free(emoarc_reports* reports) { delete reports; }

void emoarc_synth_spec_init(emoarc_synth_spec* spec) {
  if (!spec) return;
  const SynthSpec d;
  *spec = emoarc_synth_spec{};
  spec->n_instances = d.n_instances;
  spec->scheme.kind = EMOARC_LABELS_CATEGORICAL;
  spec->scheme.labels = default_scheme_labels;
  spec->scheme.n_labels = sizeof default_scheme_labels / sizeof default_scheme_labels[0];
  spec->scheme.lo = -3;
  spec->scheme.hi = 3;
  spec->vocab_size = d.vocab_size;
  spec->noise_vocab_size = d.noise_vocab_size;
  spec->tokens_per_instance = d.tokens_per_instance;
  spec->label_signal = d.label_signal;
  spec->seed = d.seed;
  spec->drift_cycles = d.drift_cycles;
  spec->drift_amplitude = d.drift_amplitude;
  spec->label_spread = d.label_spread;
  spec->lexicon_noise_entries = d.lexicon_noise_entries;
  spec->lexicon_noise_ceiling = d.lexicon_noise_ceiling;
  spec->continuous_levels = d.continuous_levels;
  spec->emotion = nullptr;
}

emoarc_status emoarc_synth_generate(const emoarc_synth_spec* s, emoarc_corpus** corpus, emoarc_lexicon** lexicon) {
  return guarded([&] {
    require(s && corpus && lexicon, "NULL argument");
    SynthSpec spec;
    spec.n_instances = s->n_instances;
    spec.scheme = to_scheme(&s->scheme);
    spec.vocab_size = s->vocab_size;
    spec.noise_vocab_size = s->noise_vocab_size;
    spec.tokens_per_instance = s->tokens_per_instance;
    spec.label_signal = s->label_signal;
    spec.seed = s->seed;
    spec.drift_cycles = s->drift_cycles;
    spec.drift_amplitude = s->drift_amplitude;
    spec.label_spread = s->label_spread;
    spec.lexicon_noise_entries = s->lexicon_noise_entries;
    spec.lexicon_noise_ceiling = s->lexicon_noise_ceiling;
    spec.continuous_levels = s->continuous_levels;
    if (s->emotion) spec.emotion = s->emotion;
    auto data = generate(spec);
    auto* c = new emoarc_corpus{std::move(data.corpus)};
    *lexicon = wrap(std::move(data.lexicon));
    *corpus = c;
  });
}

}  // extern "C"
