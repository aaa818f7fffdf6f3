// emoarc command-line front end. Talks to the library only through emoarc.h.

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <memory>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "emoarc/emoarc.h"

namespace {

using json = nlohmann::json;

constexpr int exit_cell_errors = 1;

struct Failure {
  emoarc_status status;
  std::string message;
};

void check(emoarc_status s) {
  if (s != EMOARC_OK) throw Failure{s, emoarc_last_error()};
}

[[noreturn]] void usage(const std::string& message) { throw Failure{EMOARC_ERR_INVALID_ARGUMENT, message}; }

template <typename T, void (*Free)(T*)>
struct Deleter {
  void operator()(T* p) const { Free(p); }
};
using Lexicon = std::unique_ptr<emoarc_lexicon, Deleter<emoarc_lexicon, emoarc_lexicon_free>>;
using Corpus = std::unique_ptr<emoarc_corpus, Deleter<emoarc_corpus, emoarc_corpus_free>>;
using Arc = std::unique_ptr<emoarc_arc, Deleter<emoarc_arc, emoarc_arc_free>>;
using Reports = std::unique_ptr<emoarc_reports, Deleter<emoarc_reports, emoarc_reports_free>>;

// Flat JSON object -> option values of the subcommand being run.
// "out_dir" and "out-dir" both name --out-dir; arrays become repeated values.
class JsonConfig : public CLI::Config {
 public:
  explicit JsonConfig(const CLI::App* root = nullptr) : root_(root) {}

  std::string to_config(const CLI::App* app, bool default_also, bool, std::string) const override {
    json j = json::object();
    for (const CLI::Option* opt : app->get_options()) {
      if (opt->get_lnames().empty() || !opt->get_configurable()) continue;
      const auto& name = opt->get_lnames().front();
      if (opt->count() > 0) {
        const auto& results = opt->results();
        if (opt->get_expected_max() > 1 || results.size() > 1) {
          j[name] = results;
        } else if (opt->get_type_size() == 0) {
          j[name] = opt->as<bool>();
        } else {
          j[name] = results.empty() ? std::string() : results.front();
        }
      } else if (default_also && !opt->get_default_str().empty()) {
        j[name] = opt->get_default_str();
      }
    }
    return j.dump();
  }

  std::vector<CLI::ConfigItem> from_config(std::istream& input) const override {
    json j;
    try {
      j = json::parse(input);
    } catch (const json::exception& e) {
      throw CLI::ConversionError(std::string("config file is not valid JSON: ") + e.what());
    }
    if (!j.is_object()) throw CLI::ConversionError("config file must hold a JSON object");
    std::vector<std::string> parents;
    if (root_ && !root_->get_subcommands().empty()) parents.push_back(root_->get_subcommands().front()->get_name());
    std::vector<CLI::ConfigItem> items;
    for (const auto& [key, value] : j.items()) {
      CLI::ConfigItem item;
      item.parents = parents;
      item.name = key;
      for (auto& c : item.name) {
        if (c == '_') c = '-';
      }
      if (value.is_array()) {
        for (const auto& v : value) item.inputs.push_back(scalar(v));
      } else {
        item.inputs.push_back(scalar(value));
      }
      items.push_back(std::move(item));
    }
    return items;
  }

 private:
  static std::string scalar(const json& v) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
    if (v.is_null()) return "";
    if (v.is_number()) return v.dump();
    throw CLI::ConversionError("config values must be scalars or arrays of scalars");
  }

  const CLI::App* root_;
};

std::vector<std::string> split_list(const std::string& s, char sep = ',') {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) {
    const auto b = cur.find_first_not_of(" \t");
    const auto e = cur.find_last_not_of(" \t");
    if (b != std::string::npos) out.push_back(cur.substr(b, e - b + 1));
  }
  return out;
}

double to_number(const std::string& s, const std::string& what) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used == s.size() && std::isfinite(v)) return v;
  } catch (const std::exception&) {
  }
  usage("bad " + what + " '" + s + "'");
}

std::pair<double, double> parse_range(const std::string& s, const std::string& what) {
  const auto parts = split_list(s);
  if (parts.size() != 2) usage(what + " must be 'lo,hi'");
  return {to_number(parts[0], what), to_number(parts[1], what)};
}

// "-3..3" or "0,1,2"
std::vector<double> parse_labels(const std::string& s) {
  if (const auto dots = s.find(".."); dots != std::string::npos) {
    const double lo = to_number(s.substr(0, dots), "label range");
    const double hi = to_number(s.substr(dots + 2), "label range");
    if (lo != std::floor(lo) || hi != std::floor(hi) || lo >= hi) usage("label range must be 'a..b' with integers a < b");
    std::vector<double> out;
    for (double v = lo; v <= hi; v += 1) out.push_back(v);
    return out;
  }
  std::vector<double> out;
  for (const auto& p : split_list(s)) out.push_back(to_number(p, "label"));
  return out;
}

emoarc_threshold_mode parse_mode(const std::string& s) {
  if (s == "auto") return EMOARC_THRESHOLD_AUTO;
  if (s == "magnitude") return EMOARC_THRESHOLD_MAGNITUDE;
  if (s == "signed") return EMOARC_THRESHOLD_SIGNED;
  usage("threshold mode must be auto, magnitude or signed");
}

emoarc_oov_policy parse_oov(const std::string& s) {
  if (s == "drop_na" || s == "na") return EMOARC_OOV_DROP_NA;
  if (s == "zero") return EMOARC_OOV_ZERO;
  usage("OOV policy must be drop_na or zero");
}

emoarc_scoring parse_scoring(const std::string& s) {
  if (s == "instance_mean") return EMOARC_SCORING_INSTANCE_MEAN;
  if (s == "window_word_pool") return EMOARC_SCORING_WINDOW_WORD_POOL;
  usage("scoring must be instance_mean or window_word_pool");
}

// ---- option groups ---------------------------------------------------------

struct CorpusArgs {
  std::string path;
  std::string format;
  std::string text_column = "text";
  std::string label_column = "label";
  std::string id_column;
  std::string timestamp_column;
  std::string labels = "auto";
  std::string range;
  std::string label_map;
  std::string order = "as_given";
  std::string emotion;

  void add(CLI::App* app, bool required = true) {
    auto* opt = app->add_option("--corpus", path, "Labeled corpus (tsv, csv or jsonl)");
    if (required) opt->required();
    app->add_option("--format", format, "Corpus format; default from the extension");
    app->add_option("--text-column", text_column, "Text column or field")->capture_default_str();
    app->add_option("--label-column", label_column, "Label column or field")->capture_default_str();
    app->add_option("--id-column", id_column, "Id column; default is the row index");
    app->add_option("--timestamp-column", timestamp_column, "Timestamp column (epoch or ISO-8601)");
    app->add_option("--labels", labels, "Categorical labels: 'a..b', 'x,y,z' or 'auto' (observed integers)")
        ->capture_default_str();
    app->add_option("--range", range, "Continuous label range 'lo,hi' (instead of --labels)");
    app->add_option("--label-map", label_map, "Textual labels, e.g. 'neg=-1,neu=0,pos=1'");
    app->add_option("--order", order, "as_given, by_timestamp or seeded_shuffle:<seed>")->capture_default_str();
    app->add_option("--emotion", emotion, "Emotion or dimension name recorded in reports");
  }

  Corpus load() const {
    emoarc_corpus_options o;
    emoarc_corpus_options_init(&o);
    o.text_column = text_column.c_str();
    o.label_column = label_column.c_str();
    o.id_column = id_column.empty() ? nullptr : id_column.c_str();
    o.timestamp_column = timestamp_column.empty() ? nullptr : timestamp_column.c_str();
    o.format = format.empty() ? nullptr : format.c_str();
    o.emotion = emotion.c_str();

    std::vector<std::string> names;
    std::vector<double> values;
    for (const auto& pair : split_list(label_map)) {
      const auto eq = pair.find('=');
      if (eq == std::string::npos) usage("label map entries must be name=value");
      names.push_back(pair.substr(0, eq));
      values.push_back(to_number(pair.substr(eq + 1), "label map value"));
    }
    std::vector<const char*> name_ptrs;
    for (const auto& n : names) name_ptrs.push_back(n.c_str());
    o.label_names = name_ptrs.data();
    o.label_values = values.data();
    o.n_label_map = names.size();

    if (order == "as_given") {
      o.order = EMOARC_ORDER_AS_GIVEN;
    } else if (order == "by_timestamp") {
      o.order = EMOARC_ORDER_BY_TIMESTAMP;
    } else if (order.rfind("seeded_shuffle:", 0) == 0) {
      o.order = EMOARC_ORDER_SEEDED_SHUFFLE;
      try {
        o.shuffle_seed = std::stoull(order.substr(15));
      } catch (const std::exception&) {
        usage("bad shuffle seed in '" + order + "'");
      }
    } else {
      usage("order must be as_given, by_timestamp or seeded_shuffle:<seed>");
    }

    emoarc_label_scheme scheme{};
    std::vector<double> label_values;
    if (!range.empty()) {
      if (labels != "auto") usage("--range and --labels are mutually exclusive");
      scheme.kind = EMOARC_LABELS_CONTINUOUS;
      std::tie(scheme.lo, scheme.hi) = parse_range(range, "label range");
      return load_with(o, scheme);
    }
    if (labels == "auto") {
      // Load once with an unbounded range, then fix the observed label set.
      scheme.kind = EMOARC_LABELS_CONTINUOUS;
      scheme.lo = -1e300;
      scheme.hi = 1e300;
      Corpus probe = load_with(o, scheme);
      std::vector<double> gold(emoarc_corpus_size(probe.get()));
      check(emoarc_corpus_gold(probe.get(), gold.data(), gold.size()));
      std::set<double> seen(gold.begin(), gold.end());
      for (double g : seen) {
        if (g != std::floor(g)) usage("non-integer labels found; pass --range lo,hi or --labels explicitly");
      }
      if (seen.size() == 1) seen.insert(*seen.begin() + 1);
      label_values.assign(seen.begin(), seen.end());
    } else {
      label_values = parse_labels(labels);
    }
    scheme.kind = EMOARC_LABELS_CATEGORICAL;
    scheme.labels = label_values.data();
    scheme.n_labels = label_values.size();
    return load_with(o, scheme);
  }

 private:
  Corpus load_with(const emoarc_corpus_options& o, const emoarc_label_scheme& scheme) const {
    emoarc_corpus* c = nullptr;
    check(emoarc_corpus_load(path.c_str(), &o, &scheme, &c));
    return Corpus(c);
  }
};

struct LexiconArgs {
  std::vector<std::string> paths;
  std::string format = "two_column";
  std::string emotion;
  std::string range;
  std::string granularity = "auto";

  void add(CLI::App* app, bool many) {
    auto* opt = app->add_option("--lexicon", paths, many ? "Lexicon file (repeatable)" : "Lexicon file");
    opt->required();
    if (!many) opt->expected(1);
    app->add_option("--lexicon-format", format, "two_column, nrc_emolex or nrc_vad")->capture_default_str();
    app->add_option("--lexicon-emotion", emotion, "Emotion (EmoLex) or dimension column (VAD)");
    app->add_option("--lexicon-range", range, "Declared score range 'lo,hi'");
    app->add_option("--lexicon-granularity", granularity, "auto, categorical or continuous")->capture_default_str();
  }

  std::vector<Lexicon> load() const {
    emoarc_lexicon_options o;
    emoarc_lexicon_options_init(&o);
    if (format == "two_column") {
      o.format = EMOARC_LEXICON_TWO_COLUMN;
    } else if (format == "nrc_emolex" || format == "emolex") {
      o.format = EMOARC_LEXICON_NRC_EMOLEX;
    } else if (format == "nrc_vad" || format == "nrc_vad_column" || format == "vad") {
      o.format = EMOARC_LEXICON_NRC_VAD_COLUMN;
    } else {
      usage("lexicon format must be two_column, nrc_emolex or nrc_vad");
    }
    o.emotion = emotion.empty() ? nullptr : emotion.c_str();
    if (!range.empty()) {
      o.has_range = 1;
      std::tie(o.range_lo, o.range_hi) = parse_range(range, "lexicon range");
    }
    if (granularity == "categorical") {
      o.granularity = EMOARC_LEXICON_CATEGORICAL;
    } else if (granularity == "continuous") {
      o.granularity = EMOARC_LEXICON_CONTINUOUS;
    } else if (granularity != "auto") {
      usage("lexicon granularity must be auto, categorical or continuous");
    }
    std::vector<Lexicon> out;
    for (const auto& p : paths) {
      emoarc_lexicon* lex = nullptr;
      check(emoarc_lexicon_load(p.c_str(), &o, &lex));
      out.emplace_back(lex);
    }
    return out;
  }
};

struct ArcArgs {
  std::size_t bin = 1;
  std::size_t stride = 1;
  std::string oov = "drop_na";
  std::string scoring = "instance_mean";
  std::string threshold;
  std::string threshold_mode = "auto";
  bool standardize = false;

  void add(CLI::App* app, bool lexical) {
    app->add_option("--bin", bin, "Window size in instances")->capture_default_str();
    app->add_option("--stride", stride, "Window advance in instances")->capture_default_str();
    app->add_flag("--standardize", standardize, "z-score the emitted arc");
    if (!lexical) return;
    app->add_option("--oov", oov, "drop_na or zero")->capture_default_str();
    app->add_option("--scoring", scoring, "instance_mean or window_word_pool")->capture_default_str();
    app->add_option("--threshold", threshold, "Drop lexicon entries scoring below tau");
    app->add_option("--threshold-mode", threshold_mode, "auto, magnitude or signed")->capture_default_str();
  }

  emoarc_arc_config config() const {
    emoarc_arc_config c;
    emoarc_arc_config_init(&c);
    c.bin_size = bin;
    c.stride = stride;
    c.oov = parse_oov(oov);
    c.scoring = parse_scoring(scoring);
    if (!threshold.empty()) {
      c.has_threshold = 1;
      c.tau = to_number(threshold, "threshold");
      c.threshold_mode = parse_mode(threshold_mode);
    }
    return c;
  }
};

// ---- output helpers --------------------------------------------------------

std::string out_path(const std::string& dir, const std::string& file) {
  const std::filesystem::path p(file);
  if (p.is_absolute() || dir.empty() || dir == ".") return p.string();
  std::filesystem::create_directories(dir);
  return (std::filesystem::path(dir) / p).string();
}

// `resolved` holds values the library filled in for options left unset.
std::string provenance(const CLI::App* sub, const json& resolved = json::object()) {
  json run = json::parse(JsonConfig().to_config(sub, true, false, ""));
  run.update(resolved);
  json doc = {{"tool", "emoarc"}, {"version", emoarc_version()}, {"command", sub->get_name()}, {"config", run}};
  return doc.dump();
}

Arc standardized(Arc arc) {
  emoarc_arc* out = nullptr;
  check(emoarc_arc_standardize(arc.get(), &out));
  return Arc(out);
}

void write_arc(const emoarc_arc* arc, const std::string& path, const CLI::App* sub) {
  check(emoarc_arc_write(arc, path.c_str(), provenance(sub).c_str()));
  std::printf("windows: %zu\n", emoarc_arc_size(arc));
  std::printf("wrote %s\n", path.c_str());
}

int finish_reports(const emoarc_reports* reports, const std::string& path, const CLI::App* sub,
                   const json& resolved) {
  check(emoarc_reports_write(reports, path.c_str(), provenance(sub, resolved).c_str()));
  const std::size_t n = emoarc_reports_count(reports);
  std::size_t not_ok = 0;
  for (std::size_t i = 0; i < n; ++i) {
    emoarc_report_view v;
    check(emoarc_reports_get(reports, i, &v));
    if (std::string(v.status) != "ok") ++not_ok;
  }
  const std::size_t hard = emoarc_reports_hard_failures(reports);
  std::printf("cells: %zu (not ok: %zu, errors: %zu)\n", n, not_ok, hard);
  std::printf("wrote %s\n", path.c_str());
  return hard == 0 ? 0 : exit_cell_errors;
}

// ---- subcommands -----------------------------------------------------------

struct Common {
  std::string out_dir = ".";
  std::string out;
};

void add_common(CLI::App* app, Common& c, const std::string& default_out) {
  c.out = default_out;
  app->add_option("--out-dir", c.out_dir, "Directory for outputs")->capture_default_str();
  app->add_option("--out", c.out, "Output file name or path")->capture_default_str();
}

void add_preset(CLI::App* app, std::string& preset, std::vector<CLI::Option*> pinned) {
  auto* opt = app->add_option("--preset", preset, "'paper': bins 1,10,50,100,200,300, stride 1, both OOV policies")
                  ->check(CLI::IsMember({"paper"}));
  for (auto* p : pinned) opt->excludes(p);
}

const std::vector<std::size_t> standard_bins = {1, 10, 50, 100, 200, 300};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"emoarc: emotion arcs from lexicons and labels, evaluated against gold arcs"};
  app.config_formatter(std::make_shared<JsonConfig>(&app));
  app.set_config("--config", "", "JSON file of option values for the subcommand; flags override it");
  app.fallthrough();
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(emoarc_version()));

  // gold
  CorpusArgs gold_corpus;
  ArcArgs gold_arc;
  Common gold_common;
  auto* gold = app.add_subcommand("gold", "Gold arc from instance labels");
  gold_corpus.add(gold);
  gold_arc.add(gold, false);
  add_common(gold, gold_common, "gold_arc.csv");

  // lexo
  CorpusArgs lexo_corpus;
  LexiconArgs lexo_lex;
  ArcArgs lexo_arc;
  Common lexo_common;
  auto* lexo = app.add_subcommand("lexo", "Predicted arc from lexicon word scores");
  lexo_corpus.add(lexo);
  lexo_lex.add(lexo, false);
  lexo_arc.add(lexo, true);
  add_common(lexo, lexo_common, "lexo_arc.csv");

  // eval
  std::string eval_gold_path;
  std::string eval_pred_path;
  CorpusArgs eval_corpus;
  LexiconArgs eval_lex;
  ArcArgs eval_arc;
  Common eval_common;
  auto* eval = app.add_subcommand("eval", "Spearman rho between a gold and a predicted arc");
  eval->add_option("--gold", eval_gold_path, "Gold arc CSV");
  eval->add_option("--pred", eval_pred_path, "Predicted arc CSV");
  eval_corpus.add(eval, false);
  eval->add_option("--lexicon", eval_lex.paths, "Lexicon file (with --corpus)")->expected(1);
  eval->add_option("--lexicon-format", eval_lex.format, "two_column, nrc_emolex or nrc_vad")->capture_default_str();
  eval->add_option("--lexicon-emotion", eval_lex.emotion, "Emotion (EmoLex) or dimension column (VAD)");
  eval->add_option("--lexicon-range", eval_lex.range, "Declared score range 'lo,hi'");
  eval_arc.add(eval, true);
  add_common(eval, eval_common, "eval.csv");

  // sweep
  CorpusArgs sweep_corpus;
  LexiconArgs sweep_lex;
  Common sweep_common;
  std::vector<std::size_t> sweep_bins;
  std::vector<std::string> sweep_oov;
  std::vector<std::string> sweep_scoring;
  std::vector<std::string> sweep_thresholds;
  std::string sweep_mode = "auto";
  std::size_t sweep_stride = 1;
  unsigned sweep_workers = 1;
  std::string sweep_preset;
  auto* sweep = app.add_subcommand("sweep", "Lexicon x threshold x scoring x OOV x bin grid");
  sweep_corpus.add(sweep);
  sweep_lex.add(sweep, true);
  auto* sb = sweep->add_option("--bins", sweep_bins, "Bin sizes (default 1,10,50,100,200,300)")->delimiter(',');
  auto* so = sweep->add_option("--oov", sweep_oov, "OOV policies (default drop_na,zero)")->delimiter(',');
  sweep->add_option("--scoring", sweep_scoring, "Scoring granularities (default instance_mean)")->delimiter(',');
  sweep->add_option("--thresholds", sweep_thresholds, "Threshold taus; 'none' for no threshold")->delimiter(',');
  sweep->add_option("--threshold-mode", sweep_mode, "auto, magnitude or signed")->capture_default_str();
  auto* ss = sweep->add_option("--stride", sweep_stride, "Window advance")->capture_default_str();
  sweep->add_option("--workers", sweep_workers, "Worker threads")->capture_default_str();
  add_preset(sweep, sweep_preset, {sb, so, ss});
  add_common(sweep, sweep_common, "sweep.csv");

  // oracle
  CorpusArgs oracle_corpus;
  Common oracle_common;
  std::vector<double> oracle_acc;
  std::vector<std::size_t> oracle_bins;
  std::size_t oracle_stride = 1;
  std::size_t oracle_trials = 20;
  std::uint64_t oracle_seed = 0;
  std::string oracle_model = "uniform";
  unsigned oracle_workers = 1;
  std::string oracle_preset;
  auto* oracle = app.add_subcommand("oracle", "Arcs from a simulated classifier of given accuracy");
  oracle_corpus.add(oracle);
  oracle->add_option("--accuracy", oracle_acc, "Instance-level accuracies")->delimiter(',')->required();
  auto* ob = oracle->add_option("--bins", oracle_bins, "Bin sizes (default 1,10,50,100,200,300)")->delimiter(',');
  auto* os = oracle->add_option("--stride", oracle_stride, "Window advance")->capture_default_str();
  oracle->add_option("--trials", oracle_trials, "Monte-Carlo trials per cell")->capture_default_str();
  oracle->add_option("--seed", oracle_seed, "Master seed")->capture_default_str();
  oracle->add_option("--error-model", oracle_model, "uniform or distance_weighted")
      ->check(CLI::IsMember({"uniform", "distance_weighted"}))
      ->capture_default_str();
  oracle->add_option("--workers", oracle_workers, "Worker threads")->capture_default_str();
  add_preset(oracle, oracle_preset, {ob, os});
  add_common(oracle, oracle_common, "oracle.csv");

  // synth
  emoarc_synth_spec spec;
  emoarc_synth_spec_init(&spec);
  std::string synth_labels = "-3..3";
  std::string synth_range;
  std::string synth_emotion = "valence";
  std::string synth_corpus_out = "synth_corpus.tsv";
  std::string synth_lexicon_out = "synth_lexicon.tsv";
  std::string synth_dir = ".";
  auto* synth = app.add_subcommand("synth", "Synthetic corpus and lexicon with known ground truth");
  synth->add_option("--n", spec.n_instances, "Instances")->capture_default_str();
  synth->add_option("--labels", synth_labels, "Categorical labels 'a..b' or 'x,y,z'")->capture_default_str();
  synth->add_option("--range", synth_range, "Continuous label range 'lo,hi' (instead of --labels)");
  synth->add_option("--levels", spec.continuous_levels, "Latent levels for a continuous range")->capture_default_str();
  synth->add_option("--vocab", spec.vocab_size, "Label-bearing vocabulary size")->capture_default_str();
  synth->add_option("--noise-vocab", spec.noise_vocab_size, "Label-free vocabulary size")->capture_default_str();
  synth->add_option("--tokens", spec.tokens_per_instance, "Tokens per instance")->capture_default_str();
  synth->add_option("--signal", spec.label_signal, "Probability a token is drawn from the instance's class")
      ->capture_default_str();
  synth->add_option("--seed", spec.seed, "Seed")->capture_default_str();
  synth->add_option("--drift-cycles", spec.drift_cycles, "Label drift cycles over the corpus")->capture_default_str();
  synth->add_option("--drift-amplitude", spec.drift_amplitude, "Label drift amplitude in [0,1]")->capture_default_str();
  synth->add_option("--spread", spec.label_spread, "Label spread around the drifting mean")->capture_default_str();
  synth->add_option("--lexicon-noise", spec.lexicon_noise_entries, "Noise words added to the lexicon")
      ->capture_default_str();
  synth->add_option("--lexicon-noise-ceiling", spec.lexicon_noise_ceiling, "Max |score| of noise entries")
      ->capture_default_str();
  synth->add_option("--emotion", synth_emotion, "Emotion name")->capture_default_str();
  synth->add_option("--out-dir", synth_dir, "Directory for outputs")->capture_default_str();
  synth->add_option("--out-corpus", synth_corpus_out, "Corpus TSV")->capture_default_str();
  synth->add_option("--out-lexicon", synth_lexicon_out, "Lexicon TSV")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : EMOARC_ERR_INVALID_ARGUMENT;
  }

  try {
    if (gold->parsed()) {
      Corpus corpus = gold_corpus.load();
      const auto cfg = gold_arc.config();
      emoarc_arc* a = nullptr;
      check(emoarc_gold_arc(corpus.get(), &cfg, &a));
      Arc arc(a);
      if (gold_arc.standardize) arc = standardized(std::move(arc));
      write_arc(arc.get(), out_path(gold_common.out_dir, gold_common.out), gold);
      return 0;
    }

    if (lexo->parsed()) {
      Corpus corpus = lexo_corpus.load();
      auto lexicons = lexo_lex.load();
      const auto cfg = lexo_arc.config();
      emoarc_arc* a = nullptr;
      check(emoarc_predicted_arc(corpus.get(), lexicons.front().get(), &cfg, &a));
      Arc arc(a);
      if (lexo_arc.standardize) arc = standardized(std::move(arc));
      write_arc(arc.get(), out_path(lexo_common.out_dir, lexo_common.out), lexo);
      return 0;
    }

    if (eval->parsed()) {
      Arc g;
      Arc p;
      if (!eval_gold_path.empty() || !eval_pred_path.empty()) {
        if (eval_gold_path.empty() || eval_pred_path.empty()) usage("--gold and --pred go together");
        if (!eval_corpus.path.empty()) usage("give either --gold/--pred or --corpus/--lexicon");
        emoarc_arc* a = nullptr;
        check(emoarc_arc_read(eval_gold_path.c_str(), &a));
        g.reset(a);
        check(emoarc_arc_read(eval_pred_path.c_str(), &a));
        p.reset(a);
      } else {
        if (eval_corpus.path.empty() || eval_lex.paths.empty()) usage("eval needs --gold/--pred or --corpus/--lexicon");
        Corpus corpus = eval_corpus.load();
        auto lexicons = eval_lex.load();
        const auto cfg = eval_arc.config();
        emoarc_arc* a = nullptr;
        check(emoarc_gold_arc(corpus.get(), &cfg, &a));
        g.reset(a);
        check(emoarc_predicted_arc(corpus.get(), lexicons.front().get(), &cfg, &a));
        p.reset(a);
      }
      if (eval_arc.standardize) {
        g = standardized(std::move(g));
        p = standardized(std::move(p));
      }
      emoarc_reports* r = nullptr;
      check(emoarc_evaluate(g.get(), p.get(), &r));
      Reports reports(r);
      emoarc_report_view v;
      check(emoarc_reports_get(reports.get(), 0, &v));
      const auto path = out_path(eval_common.out_dir, eval_common.out);
      check(emoarc_reports_write(reports.get(), path.c_str(), provenance(eval).c_str()));
      std::printf("windows: %zu\n", v.n_windows);
      std::printf("rho: %.6f\n", v.rho);
      std::printf("wrote %s\n", path.c_str());
      return 0;
    }

    if (sweep->parsed()) {
      if (!sweep_preset.empty()) sweep_stride = 1;
      if (!sweep_preset.empty() || sweep_bins.empty()) sweep_bins = standard_bins;
      if (!sweep_preset.empty() || sweep_oov.empty()) sweep_oov = {"drop_na", "zero"};
      if (sweep_scoring.empty()) sweep_scoring = {"instance_mean"};
      if (sweep_thresholds.empty()) sweep_thresholds = {"none"};
      const json resolved = {{"bins", sweep_bins},
                             {"oov", sweep_oov},
                             {"scoring", sweep_scoring},
                             {"thresholds", sweep_thresholds},
                             {"stride", sweep_stride}};
      Corpus corpus = sweep_corpus.load();
      auto lexicons = sweep_lex.load();
      std::vector<const emoarc_lexicon*> lex_ptrs;
      for (const auto& l : lexicons) lex_ptrs.push_back(l.get());
      std::vector<emoarc_oov_policy> oov;
      for (const auto& s : sweep_oov) oov.push_back(parse_oov(s));
      std::vector<emoarc_scoring> scoring;
      for (const auto& s : sweep_scoring) scoring.push_back(parse_scoring(s));
      std::vector<emoarc_threshold> thresholds;
      for (const auto& s : sweep_thresholds) {
        emoarc_threshold t{};
        if (s != "none") {
          t.enabled = 1;
          t.tau = to_number(s, "threshold");
          t.mode = parse_mode(sweep_mode);
        }
        thresholds.push_back(t);
      }
      emoarc_sweep_grid grid;
      emoarc_sweep_grid_init(&grid);
      grid.bin_sizes = sweep_bins.data();
      grid.n_bin_sizes = sweep_bins.size();
      grid.oov_policies = oov.data();
      grid.n_oov_policies = oov.size();
      grid.scorings = scoring.data();
      grid.n_scorings = scoring.size();
      grid.thresholds = thresholds.data();
      grid.n_thresholds = thresholds.size();
      grid.stride = sweep_stride;
      emoarc_reports* r = nullptr;
      check(emoarc_sweep_lexo(corpus.get(), lex_ptrs.data(), lex_ptrs.size(), &grid, sweep_workers, &r));
      Reports reports(r);
      return finish_reports(reports.get(), out_path(sweep_common.out_dir, sweep_common.out), sweep, resolved);
    }

    if (oracle->parsed()) {
      if (!oracle_preset.empty() || oracle_bins.empty()) oracle_bins = standard_bins;
      if (!oracle_preset.empty()) oracle_stride = 1;
      const json resolved = {{"bins", oracle_bins}, {"stride", oracle_stride}};
      Corpus corpus = oracle_corpus.load();
      emoarc_oracle_config cfg;
      emoarc_oracle_config_init(&cfg);
      cfg.seed = oracle_seed;
      cfg.trials = oracle_trials;
      cfg.distance_weighted = oracle_model == "distance_weighted";
      emoarc_reports* r = nullptr;
      check(emoarc_oracle_curve(corpus.get(), oracle_acc.data(), oracle_acc.size(), oracle_bins.data(),
                                oracle_bins.size(), oracle_stride, &cfg, oracle_workers, &r));
      Reports reports(r);
      return finish_reports(reports.get(), out_path(oracle_common.out_dir, oracle_common.out), oracle, resolved);
    }

    if (synth->parsed()) {
      std::vector<double> labels;
      if (!synth_range.empty()) {
        spec.scheme.kind = EMOARC_LABELS_CONTINUOUS;
        std::tie(spec.scheme.lo, spec.scheme.hi) = parse_range(synth_range, "label range");
      } else {
        labels = parse_labels(synth_labels);
        spec.scheme.kind = EMOARC_LABELS_CATEGORICAL;
        spec.scheme.labels = labels.data();
        spec.scheme.n_labels = labels.size();
      }
      spec.emotion = synth_emotion.c_str();
      emoarc_corpus* c = nullptr;
      emoarc_lexicon* l = nullptr;
      check(emoarc_synth_generate(&spec, &c, &l));
      Corpus corpus(c);
      Lexicon lexicon(l);
      const auto corpus_path = out_path(synth_dir, synth_corpus_out);
      const auto lexicon_path = out_path(synth_dir, synth_lexicon_out);
      check(emoarc_corpus_save(corpus.get(), corpus_path.c_str()));
      check(emoarc_lexicon_save(lexicon.get(), lexicon_path.c_str()));
      std::printf("instances: %zu\nlexicon entries: %zu\n", emoarc_corpus_size(corpus.get()),
                  emoarc_lexicon_size(lexicon.get()));
      std::printf("wrote %s\nwrote %s\n", corpus_path.c_str(), lexicon_path.c_str());
      return 0;
    }
  } catch (const Failure& f) {
    std::fprintf(stderr, "emoarc: %s: %s\n", emoarc_status_name(f.status), f.message.c_str());
    return f.status;
  } catch (const std::filesystem::filesystem_error& e) {
    std::fprintf(stderr, "emoarc: io: %s\n", e.what());
    return EMOARC_ERR_IO;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "emoarc: internal: %s\n", e.what());
    return EMOARC_ERR_INTERNAL;
  }
  return EMOARC_ERR_INVALID_ARGUMENT;
}
