#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "emoarc/arcgen.hpp"
#include "emoarc/ingest.hpp"
#include "emoarc/lexstore.hpp"
#include "emoarc/oracle.hpp"
#include "emoarc/report.hpp"

namespace emoarc {

/// 1-based ranks; tied values share the average of the ranks they span.
std::vector<double> average_ranks(std::span<const double> values);

/// Pearson correlation of the average-rank vectors. Throws
/// Error(invalid_argument) on length mismatch and Error(degenerate_arc) for
/// fewer than 2 values or a constant series.
double spearman(std::span<const double> a, std::span<const double> b);
/// Arcs must also share window_starts.
double spearman(const EmotionArc& a, const EmotionArc& b);

EvalReport evaluate_pair(const EmotionArc& gold, const EmotionArc& pred);

struct SweepGrid {
  std::vector<std::size_t> bin_sizes{1, 10, 50, 100, 200, 300};
  std::vector<OovPolicy> oov_policies{OovPolicy::drop_na, OovPolicy::zero};
  std::vector<std::optional<ThresholdSpec>> thresholds{std::nullopt};
  std::vector<ScoringGranularity> granularities{ScoringGranularity::instance_mean};
  std::size_t stride = 1;

  /// Throws Error(invalid_argument) if any list is empty or stride is 0.
  void validate() const;
};

struct LexoMethod {
  std::vector<EmotionLexicon> lexicons;
};

struct OracleMethod {
  std::vector<double> accuracies;
  OracleConfig config;
};

using SweepMethod = std::variant<LexoMethod, OracleMethod>;

/// One report per grid cell; failing cells carry a non-ok status. Output is
/// independent of `workers`.
///
/// Lexicon cells are ordered lexicon, threshold, granularity, OOV policy,
/// bin size. Oracle cells use accuracies x bin sizes; thresholds, OOV
/// policies and granularities do not apply to them.
std::vector<EvalReport> sweep(const LabeledCorpus& corpus, const SweepGrid& grid, const SweepMethod& method,
                              unsigned workers = 1);

}  // namespace emoarc
