#include "emoarc/arcgen.hpp"

#include <algorithm>
#include <cmath>

#include "detail/json_conv.hpp"
#include "detail/strings.hpp"
#include "emoarc/error.hpp"

namespace emoarc {

using detail::ascii_lower;

std::string_view to_string(OovPolicy p) { return p == OovPolicy::drop_na ? "drop_na" : "zero"; }

std::string_view to_string(ScoringGranularity g) {
  return g == ScoringGranularity::instance_mean ? "instance_mean" : "window_word_pool";
}

OovPolicy parse_oov_policy(std::string_view s) {
  const auto v = ascii_lower(detail::trim(s));
  if (v == "drop_na" || v == "na" || v == "drop") return OovPolicy::drop_na;
  if (v == "zero" || v == "0") return OovPolicy::zero;
  fail(ErrorCategory::invalid_argument, "unknown OOV policy '" + std::string(s) + "'");
}

ScoringGranularity parse_granularity(std::string_view s) {
  const auto v = ascii_lower(detail::trim(s));
  if (v == "instance_mean" || v == "instance") return ScoringGranularity::instance_mean;
  if (v == "window_word_pool" || v == "word_pool" || v == "pool") return ScoringGranularity::window_word_pool;
  fail(ErrorCategory::invalid_argument, "unknown scoring granularity '" + std::string(s) + "'");
}

void ArcConfig::validate(std::size_t n) const {
  if (n == 0) fail(ErrorCategory::invalid_argument, "corpus is empty");
  if (bin_size == 0) fail(ErrorCategory::invalid_argument, "bin size must be positive");
  if (stride == 0) fail(ErrorCategory::invalid_argument, "stride must be positive");
  if (bin_size > n)
    fail(ErrorCategory::invalid_argument, "bin size " + std::to_string(bin_size) +
                                              " exceeds corpus length " + std::to_string(n));
}

std::size_t window_count(std::size_t n, std::size_t bin_size, std::size_t stride) {
  if (bin_size == 0 || stride == 0 || bin_size > n) return 0;
  return (n - bin_size) / stride + 1;
}

InstanceTally tally_instance(const TokenList& tokens, const EmotionLexicon& lex) {
  InstanceTally t;
  t.tokens = tokens.size();
  for (const auto& tok : tokens) {
    if (const auto s = lex.lookup(tok)) {
      t.score_sum += *s;
      ++t.found;
    }
  }
  return t;
}

std::vector<InstanceTally> tally_instances(std::span<const TokenList> tokens, const EmotionLexicon& lex) {
  std::vector<InstanceTally> out;
  out.reserve(tokens.size());
  for (const auto& t : tokens) out.push_back(tally_instance(t, lex));
  return out;
}

std::vector<TokenList> tokenize_corpus(const LabeledCorpus& corpus) {
  std::vector<TokenList> out;
  out.reserve(corpus.size());
  for (const auto& inst : corpus.instances()) out.push_back(tokenize(inst.text));
  return out;
}

std::optional<double> score_tally(const InstanceTally& tally, OovPolicy oov) {
  const std::size_t denom = oov == OovPolicy::drop_na ? tally.found : tally.tokens;
  if (denom == 0) return std::nullopt;
  return tally.score_sum / static_cast<double>(denom);
}

std::optional<double> score_instance(const TokenList& tokens, const EmotionLexicon& lex, OovPolicy oov) {
  return score_tally(tally_instance(tokens, lex), oov);
}

namespace {

EmotionArc empty_arc(const ArcConfig& config, std::size_t n) {
  EmotionArc arc;
  arc.config = config;
  const auto count = window_count(n, config.bin_size, config.stride);
  arc.values.reserve(count);
  arc.window_starts.reserve(count);
  return arc;
}

[[noreturn]] void empty_window(std::size_t start) {
  fail(ErrorCategory::empty_window,
       "window starting at instance " + std::to_string(start) + " has no scorable content");
}

}  // namespace

EmotionArc arc_from_scores(std::span<const std::optional<double>> scores, const ArcConfig& config) {
  config.validate(scores.size());
  EmotionArc arc = empty_arc(config, scores.size());
  const auto count = window_count(scores.size(), config.bin_size, config.stride);
  for (std::size_t w = 0; w < count; ++w) {
    const std::size_t start = w * config.stride;
    double sum = 0.0;
    std::size_t defined = 0;
    for (std::size_t i = start; i < start + config.bin_size; ++i) {
      if (scores[i]) {
        sum += *scores[i];
        ++defined;
      }
    }
    if (defined == 0) empty_window(start);
    arc.values.push_back(sum / static_cast<double>(defined));
    arc.window_starts.push_back(start);
  }
  return arc;
}

EmotionArc arc_from_scores(std::span<const double> scores, const ArcConfig& config) {
  config.validate(scores.size());
  EmotionArc arc = empty_arc(config, scores.size());
  const auto count = window_count(scores.size(), config.bin_size, config.stride);
  const auto denom = static_cast<double>(config.bin_size);
  for (std::size_t w = 0; w < count; ++w) {
    const std::size_t start = w * config.stride;
    double sum = 0.0;
    for (std::size_t i = start; i < start + config.bin_size; ++i) sum += scores[i];
    arc.values.push_back(sum / denom);
    arc.window_starts.push_back(start);
  }
  return arc;
}

EmotionArc arc_from_tallies(std::span<const InstanceTally> tallies, const ArcConfig& config) {
  if (config.granularity == ScoringGranularity::instance_mean) {
    std::vector<std::optional<double>> scores;
    scores.reserve(tallies.size());
    for (const auto& t : tallies) scores.push_back(score_tally(t, config.oov));
    return arc_from_scores(scores, config);
  }
  config.validate(tallies.size());
  EmotionArc arc = empty_arc(config, tallies.size());
  const auto count = window_count(tallies.size(), config.bin_size, config.stride);
  for (std::size_t w = 0; w < count; ++w) {
    const std::size_t start = w * config.stride;
    double sum = 0.0;
    std::size_t denom = 0;
    for (std::size_t i = start; i < start + config.bin_size; ++i) {
      sum += tallies[i].score_sum;
      denom += config.oov == OovPolicy::drop_na ? tallies[i].found : tallies[i].tokens;
    }
    if (denom == 0) empty_window(start);
    arc.values.push_back(sum / static_cast<double>(denom));
    arc.window_starts.push_back(start);
  }
  return arc;
}

EmotionArc gold_arc(const LabeledCorpus& corpus, const ArcConfig& config) {
  if (corpus.empty()) fail(ErrorCategory::invalid_argument, "corpus is empty");
  ArcConfig gold_config = config;
  gold_config.threshold.reset();
  auto labels = corpus.gold();
  const auto& rescale = corpus.unit_rescale();
  if (rescale) {
    const auto& unit = corpus.scheme().labels;
    for (double& g : labels)
      g = rescale->source_labels[static_cast<std::size_t>(std::lower_bound(unit.begin(), unit.end(), g) - unit.begin())];
  }
  EmotionArc arc = arc_from_scores(std::span<const double>(labels), gold_config);
  if (rescale) {
    for (double& v : arc.values) v = (v - rescale->lo) / rescale->span;
  }
  arc.method = "gold";
  arc.corpus = corpus.name();
  return arc;
}

EmotionArc predicted_arc(std::span<const TokenList> tokens, const EmotionLexicon& lex,
                         const ArcConfig& config) {
  if (tokens.empty()) fail(ErrorCategory::invalid_argument, "corpus is empty");
  config.validate(tokens.size());
  std::vector<InstanceTally> tallies;
  if (config.threshold) {
    tallies = tally_instances(tokens, threshold_lexicon(lex, *config.threshold));
  } else {
    tallies = tally_instances(tokens, lex);
  }
  EmotionArc arc = arc_from_tallies(tallies, config);
  if (arc.config.threshold) arc.config.threshold->mode = resolve_mode(lex, arc.config.threshold->mode);
  arc.method = "lexo";
  arc.lexicon = lex.id();
  return arc;
}

EmotionArc predicted_arc(const LabeledCorpus& corpus, const EmotionLexicon& lex, const ArcConfig& config) {
  const auto tokens = tokenize_corpus(corpus);
  EmotionArc arc = predicted_arc(std::span<const TokenList>(tokens), lex, config);
  arc.corpus = corpus.name();
  return arc;
}

EmotionArc standardize(const EmotionArc& arc) {
  const std::size_t n = arc.values.size();
  if (n < 2) fail(ErrorCategory::degenerate_arc, "cannot standardize an arc with fewer than 2 values");
  if (std::all_of(arc.values.begin(), arc.values.end(), [&](double v) { return v == arc.values.front(); }))
    fail(ErrorCategory::degenerate_arc, "cannot standardize a constant arc");
  // The mean is kept as hi + lo (compensated sum) so deviations stay exact to
  // rounding even when the spread is tiny next to the level.
  double sum = 0.0, carry = 0.0;
  for (double v : arc.values) {
    const double t = sum + v;
    carry += std::fabs(sum) >= std::fabs(v) ? (sum - t) + v : (v - t) + sum;
    sum = t;
  }
  const double count = static_cast<double>(n);
  const double mean_hi = (sum + carry) / count;
  const double mean_lo = (std::fma(-mean_hi, count, sum) + carry) / count;
  auto deviation = [&](double v) { return (v - mean_hi) - mean_lo; };
  double ss = 0.0;
  for (double v : arc.values) ss += deviation(v) * deviation(v);
  const double sd = std::sqrt(ss / count);
  if (!(sd > 0.0) || !std::isfinite(sd)) fail(ErrorCategory::degenerate_arc, "arc has zero variance");

  EmotionArc out = arc;
  for (double& v : out.values) v = deviation(v) / sd;
  out.standardized = true;
  return out;
}

std::filesystem::path sidecar_path(const std::filesystem::path& csv) {
  auto p = csv;
  if (ascii_lower(p.extension().string()) == ".csv") return p.replace_extension(".json");
  return std::filesystem::path(p.string() + ".json");
}

std::string serialize_arc_csv(const EmotionArc& arc) {
  std::string out = "window_start,score\n";
  for (std::size_t i = 0; i < arc.values.size(); ++i) {
    out += std::to_string(arc.window_starts[i]);
    out += ',';
    out += detail::format_double(arc.values[i]);
    out += '\n';
  }
  return out;
}

std::string serialize_arc_sidecar(const EmotionArc& arc, std::string_view extra_json) {
  nlohmann::json j = {
      {"method", arc.method},
      {"corpus", arc.corpus},
      {"lexicon", arc.lexicon},
      {"standardized", arc.standardized},
      {"n_windows", arc.values.size()},
      {"config", detail::to_json(arc.config)},
  };
  if (!extra_json.empty()) j["run"] = detail::parse_json_object(extra_json, "arc provenance");
  return j.dump(2) + "\n";
}

void write_arc(const EmotionArc& arc, const std::filesystem::path& csv, std::string_view extra_json) {
  const auto sidecar = serialize_arc_sidecar(arc, extra_json);
  detail::write_file(csv.string(), serialize_arc_csv(arc));
  detail::write_file(sidecar_path(csv).string(), sidecar);
}

EmotionArc read_arc(const std::filesystem::path& csv) {
  if (!std::filesystem::exists(csv)) fail(ErrorCategory::io, "arc file '" + csv.string() + "' does not exist");
  const auto text = detail::read_file(csv.string());
  const auto rows = detail::lines(text);
  EmotionArc arc;
  arc.method = "file";
  bool header = true;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto line = detail::trim(rows[i]);
    if (line.empty()) continue;
    const auto fields = detail::split(line, ',');
    if (header) {
      header = false;
      if (fields.size() != 2 || detail::trim(fields[0]) != "window_start" || detail::trim(fields[1]) != "score")
        fail(ErrorCategory::format, csv.string() + ": expected header 'window_start,score'");
      continue;
    }
    if (fields.size() != 2) fail(ErrorCategory::format, csv.string() + ":" + std::to_string(i + 1) + ": expected 2 columns");
    const auto start = detail::parse_double(fields[0]);
    const auto score = detail::parse_double(fields[1]);
    if (!start || *start < 0 || *start != std::floor(*start) || !score || !std::isfinite(*score))
      fail(ErrorCategory::format, csv.string() + ":" + std::to_string(i + 1) + ": malformed row");
    arc.window_starts.push_back(static_cast<std::size_t>(*start));
    arc.values.push_back(*score);
  }
  if (header) fail(ErrorCategory::format, csv.string() + ": empty arc file");

  const auto side = sidecar_path(csv);
  if (std::filesystem::exists(side)) {
    const auto j = detail::parse_json_object(detail::read_file(side.string()), side.string());
    arc.method = j.value("method", arc.method);
    arc.corpus = j.value("corpus", std::string{});
    arc.lexicon = j.value("lexicon", std::string{});
    arc.standardized = j.value("standardized", false);
    if (const auto it = j.find("config"); it != j.end() && it->is_object())
      arc.config = detail::arc_config_from_json(*it);
  }
  return arc;
}

}  // namespace emoarc
