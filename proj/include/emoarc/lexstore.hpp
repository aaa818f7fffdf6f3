#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace emoarc {

enum class Granularity { categorical, continuous };

std::string_view to_string(Granularity g);

/// Closed interval of admissible association scores. Categorical lexicons
/// additionally declare their finite label set.
struct ScoreRange {
  double lo = 0.0;
  double hi = 1.0;
  std::vector<double> labels;  // sorted, distinct; empty for continuous

  bool contains(double score) const noexcept { return score >= lo && score <= hi; }
  bool is_label(double score) const noexcept;
  bool is_signed() const noexcept { return lo < 0.0; }
  double max_magnitude() const noexcept;

  friend bool operator==(const ScoreRange&, const ScoreRange&) = default;
};

enum class ThresholdMode {
  automatic,  // magnitude for signed ranges, signed for unipolar ones
  magnitude,  // keep |score| >= tau
  signed_,    // keep score >= tau
};

std::string_view to_string(ThresholdMode m);
ThresholdMode parse_threshold_mode(std::string_view s);

struct ThresholdSpec {
  double tau = 0.0;
  ThresholdMode mode = ThresholdMode::automatic;

  friend bool operator==(const ThresholdSpec&, const ThresholdSpec&) = default;
};

/// Counters gathered while reading a lexicon file.
struct LoadStats {
  std::size_t rows = 0;
  std::size_t duplicates = 0;            // later row replaced an earlier one
  std::size_t multiword_rejected = 0;    // terms containing whitespace
};

/// Immutable term -> association score map.
class EmotionLexicon {
 public:
  EmotionLexicon() = default;

  /// Validates every entry against the metadata; throws Error(format) on
  /// violation. Terms are expected lowercase already.
  EmotionLexicon(std::string emotion, Granularity granularity, ScoreRange range,
                 std::map<std::string, double, std::less<>> entries,
                 std::string provenance = {}, LoadStats stats = {});

  const std::string& emotion() const noexcept { return emotion_; }
  Granularity granularity() const noexcept { return granularity_; }
  const ScoreRange& range() const noexcept { return range_; }
  const std::string& provenance() const noexcept { return provenance_; }
  const LoadStats& stats() const noexcept { return stats_; }
  const std::map<std::string, double, std::less<>>& entries() const noexcept {
    return entries_;
  }
  std::size_t size() const noexcept { return entries_.size(); }
  bool empty() const noexcept { return entries_.empty(); }

  std::optional<double> lookup(std::string_view term) const;

  /// Label used in reports, e.g. "nrc-vad:valence".
  std::string id() const;

 private:
  std::string emotion_;
  Granularity granularity_ = Granularity::continuous;
  ScoreRange range_;
  std::map<std::string, double, std::less<>> entries_;
  std::string provenance_;
  LoadStats stats_;
};

enum class LexiconFormat { two_column, nrc_emolex, nrc_vad_column };

std::string_view to_string(LexiconFormat f);
LexiconFormat parse_lexicon_format(std::string_view s);

struct LexiconLoadOptions {
  LexiconFormat format = LexiconFormat::two_column;
  /// Emotion (nrc_emolex) or dimension header (nrc_vad_column) to select;
  /// for two_column it only names the lexicon.
  std::string emotion;
  /// Declared score range. When absent it comes from `# range:` metadata in
  /// the file, else [-1,1] if any score is negative, else [0,1].
  std::optional<ScoreRange> range;
  std::optional<Granularity> granularity;
  std::string provenance;
};

EmotionLexicon load_lexicon(const std::filesystem::path& path,
                            const LexiconLoadOptions& options);

/// Parses lexicon text already in memory; `source` names it in messages.
EmotionLexicon parse_lexicon(std::string_view text, const LexiconLoadOptions& options,
                             std::string_view source = "<memory>");

/// Writes two_column TSV with `# key: value` metadata lines that
/// load_lexicon reads back.
void save_lexicon(const EmotionLexicon& lex, const std::filesystem::path& path);
std::string serialize_lexicon(const EmotionLexicon& lex);

/// Resolves ThresholdMode::automatic against the lexicon's range.
ThresholdMode resolve_mode(const EmotionLexicon& lex, ThresholdMode mode);

/// Keeps entries whose score passes the spec (boundary inclusive). Throws
/// Error(invalid_argument) when tau is outside [0, max |range|].
EmotionLexicon threshold_lexicon(const EmotionLexicon& lex, const ThresholdSpec& spec);

inline std::optional<double> lookup(const EmotionLexicon& lex, std::string_view term) {
  return lex.lookup(term);
}

}  // namespace emoarc
