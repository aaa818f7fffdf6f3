#pragma once

#include <cstddef>
#include <filesystem>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "emoarc/arcgen.hpp"
#include "emoarc/error.hpp"

namespace emoarc {

enum class CellStatus {
  ok,
  degenerate_arc,   // arc shorter than 2 windows or constant
  empty_window,     // some window had nothing to score
  invalid_config,   // e.g. bin size larger than the corpus, tau out of range
  error,            // anything else; counts as a hard failure
};

std::string_view to_string(CellStatus s);
CellStatus status_for(ErrorCategory category);

/// Outcome of comparing one predicted arc configuration with its gold arc.
struct EvalReport {
  std::string corpus;
  std::string emotion;
  std::string method;  // "lexo", "oracle" or "pair"
  std::string lexicon;
  std::optional<double> accuracy;
  ArcConfig config;
  bool has_oov = true;  // false for oracle cells, where OOV does not apply
  std::size_t n_windows = 0;
  double rho = std::numeric_limits<double>::quiet_NaN();
  std::optional<double> rho_min;
  std::optional<double> rho_max;
  std::size_t trials = 0;
  std::optional<std::size_t> lexicon_entries;
  bool gold_standardized = false;
  bool pred_standardized = false;
  CellStatus status = CellStatus::ok;
  std::string message;

  bool ok() const noexcept { return status == CellStatus::ok; }
};

/// Long-format CSV, one row per report, rho with 6 decimals.
std::string serialize_reports_csv(std::span<const EvalReport> reports);
/// JSON mirror; `provenance_json` (a JSON object, may be empty) is embedded
/// verbatim under "provenance".
std::string serialize_reports_json(std::span<const EvalReport> reports, std::string_view provenance_json = {});

void write_reports(std::span<const EvalReport> reports, const std::filesystem::path& csv,
                   std::string_view provenance_json = {});

}  // namespace emoarc
