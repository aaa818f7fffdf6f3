#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "emoarc/ingest.hpp"
#include "emoarc/lexstore.hpp"
#include "emoarc/textprep.hpp"

namespace emoarc {

/// Treatment of tokens absent from the lexicon.
enum class OovPolicy {
  drop_na,  // ignored: no score available
  zero,     // counted with score 0
};

enum class ScoringGranularity {
  instance_mean,     // score each instance, then average instance scores
  window_word_pool,  // pool all tokens of the window, then average
};

std::string_view to_string(OovPolicy p);
std::string_view to_string(ScoringGranularity g);
OovPolicy parse_oov_policy(std::string_view s);
ScoringGranularity parse_granularity(std::string_view s);

struct ArcConfig {
  std::size_t bin_size = 1;
  std::size_t stride = 1;
  OovPolicy oov = OovPolicy::drop_na;
  ScoringGranularity granularity = ScoringGranularity::instance_mean;
  std::optional<ThresholdSpec> threshold;

  /// Throws Error(invalid_argument) unless 1 <= bin_size <= n and stride >= 1.
  void validate(std::size_t n) const;

  friend bool operator==(const ArcConfig&, const ArcConfig&) = default;
};

/// floor((n - bin) / stride) + 1, or 0 when bin > n.
std::size_t window_count(std::size_t n, std::size_t bin_size, std::size_t stride);

struct EmotionArc {
  std::vector<double> values;
  std::vector<std::size_t> window_starts;
  bool standardized = false;
  ArcConfig config;
  std::string method;   // "gold", "lexo", "oracle", or "file"
  std::string corpus;
  std::string lexicon;

  std::size_t size() const noexcept { return values.size(); }
};

/// Word statistics of one instance against one lexicon.
struct InstanceTally {
  double score_sum = 0.0;   // sum of scores of in-lexicon tokens, in token order
  std::size_t found = 0;    // in-lexicon tokens
  std::size_t tokens = 0;   // all tokens
};

InstanceTally tally_instance(const TokenList& tokens, const EmotionLexicon& lex);
std::vector<InstanceTally> tally_instances(std::span<const TokenList> tokens, const EmotionLexicon& lex);
std::vector<TokenList> tokenize_corpus(const LabeledCorpus& corpus);

/// Mean word score of one instance under the OOV policy; nullopt when there
/// is nothing to average.
std::optional<double> score_instance(const TokenList& tokens, const EmotionLexicon& lex, OovPolicy oov);
std::optional<double> score_tally(const InstanceTally& tally, OovPolicy oov);

/// Rolling mean over instance scores; undefined scores are skipped. Throws
/// Error(empty_window) if a window holds no defined score.
EmotionArc arc_from_scores(std::span<const std::optional<double>> scores, const ArcConfig& config);
EmotionArc arc_from_scores(std::span<const double> scores, const ArcConfig& config);

/// Predicted arc from precomputed tallies, honoring granularity and OOV
/// policy. The threshold in `config` must already be applied to the tallies.
EmotionArc arc_from_tallies(std::span<const InstanceTally> tallies, const ArcConfig& config);

EmotionArc gold_arc(const LabeledCorpus& corpus, const ArcConfig& config);
EmotionArc predicted_arc(const LabeledCorpus& corpus, const EmotionLexicon& lex, const ArcConfig& config);
EmotionArc predicted_arc(std::span<const TokenList> tokens, const EmotionLexicon& lex, const ArcConfig& config);

/// z-score with the population standard deviation. Throws
/// Error(degenerate_arc) for arcs shorter than 2 or constant arcs.
EmotionArc standardize(const EmotionArc& arc);

/// Sidecar path for an arc CSV: "x.csv" -> "x.json".
std::filesystem::path sidecar_path(const std::filesystem::path& csv);

/// CSV `window_start,score` plus a JSON sidecar with the arc's provenance.
/// `extra_json`, when non-empty, must be a JSON object and is embedded under
/// "run".
void write_arc(const EmotionArc& arc, const std::filesystem::path& csv, std::string_view extra_json = {});
std::string serialize_arc_csv(const EmotionArc& arc);
std::string serialize_arc_sidecar(const EmotionArc& arc, std::string_view extra_json = {});

/// Reads an arc CSV; the sidecar is consulted when present.
EmotionArc read_arc(const std::filesystem::path& csv);

}  // namespace emoarc
