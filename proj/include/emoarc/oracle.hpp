#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "emoarc/ingest.hpp"
#include "emoarc/report.hpp"

namespace emoarc {

enum class ErrorModel {
  uniform,            // wrong labels drawn uniformly from the k-1 others
  distance_weighted,  // wrong label j drawn with weight 1/|j - gold index|
};

std::string_view to_string(ErrorModel m);
ErrorModel parse_error_model(std::string_view s);

/// Simulated instance-level classifier.
struct OracleConfig {
  double accuracy = 1.0;
  std::uint64_t seed = 0;
  std::size_t trials = 20;
  ErrorModel error_model = ErrorModel::uniform;

  void validate() const;
};

/// Predicted labels for one trial. Each instance's draw depends only on
/// (seed, trial, instance id), so reordering the corpus does not change any
/// instance's outcome.
std::vector<double> simulate_labels(const LabeledCorpus& corpus, const OracleConfig& config, std::size_t trial);

/// For each (accuracy, bin): mean/min/max Spearman rho between the gold arc
/// and `config.trials` simulated arcs. `config.accuracy` is ignored.
std::vector<EvalReport> oracle_curve(const LabeledCorpus& corpus, std::span<const double> accuracies,
                                     std::span<const std::size_t> bins, const OracleConfig& config,
                                     unsigned workers = 1, std::size_t stride = 1);

}  // namespace emoarc
