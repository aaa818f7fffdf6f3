#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace emoarc {

enum class LabelKind { categorical, continuous };

std::string_view to_string(LabelKind k);

/// Admissible gold labels of a corpus.
struct LabelScheme {
  LabelKind kind = LabelKind::categorical;
  std::vector<double> labels;  // categorical: sorted, >= 2 distinct
  double lo = 0.0;             // continuous range (categorical: min/max label)
  double hi = 1.0;

  static LabelScheme categorical(std::vector<double> labels);
  static LabelScheme continuous(double lo, double hi);
  /// Integer labels first..last inclusive, e.g. integer_range(-3, 3).
  static LabelScheme integer_range(int first, int last);

  /// Number of classes; 0 for continuous schemes.
  std::size_t k() const noexcept { return kind == LabelKind::categorical ? labels.size() : 0; }
  double chance_accuracy() const;
  double min_label() const noexcept;
  double max_label() const noexcept;
  bool conforms(double gold) const noexcept;
  /// Throws Error(invalid_argument) when the invariants do not hold.
  void validate() const;

  friend bool operator==(const LabelScheme&, const LabelScheme&) = default;
};

enum class OrderKind { as_given, by_timestamp, seeded_shuffle };

struct OrderPolicy {
  OrderKind kind = OrderKind::as_given;
  std::uint64_t seed = 0;

  static OrderPolicy as_given() { return {}; }
  static OrderPolicy by_timestamp() { return {OrderKind::by_timestamp, 0}; }
  static OrderPolicy shuffled(std::uint64_t seed) { return {OrderKind::seeded_shuffle, seed}; }

  friend bool operator==(const OrderPolicy&, const OrderPolicy&) = default;
};

std::string to_string(const OrderPolicy& p);
/// "as_given", "by_timestamp" or "seeded_shuffle:<seed>".
OrderPolicy parse_order_policy(std::string_view s);

struct Instance {
  std::string id;
  std::string text;
  double gold = 0.0;
  std::optional<double> timestamp;  // seconds since the Unix epoch
};

/// Record kept by relabel_to_unit: label i of the scheme was source_labels[i]
/// before the map (v - lo) / span.
struct UnitRescale {
  std::vector<double> source_labels;
  double lo = 0.0;
  double span = 1.0;
};

/// Ordered, validated collection of labeled instances.
class LabeledCorpus {
 public:
  LabeledCorpus() = default;

  /// Takes instances in source order, validates them and applies `order`.
  LabeledCorpus(std::vector<Instance> instances, LabelScheme scheme, std::string emotion,
                OrderPolicy order = {}, std::string name = {});

  const std::vector<Instance>& instances() const noexcept { return instances_; }
  const LabelScheme& scheme() const noexcept { return scheme_; }
  const std::string& emotion() const noexcept { return emotion_; }
  const OrderPolicy& order() const noexcept { return order_; }
  const std::string& name() const noexcept { return name_; }
  std::size_t size() const noexcept { return instances_.size(); }
  bool empty() const noexcept { return instances_.empty(); }

  std::vector<double> gold() const;

  /// Set on corpora produced by relabel_to_unit.
  const std::optional<UnitRescale>& unit_rescale() const noexcept { return unit_rescale_; }

 private:
  friend LabeledCorpus relabel_to_unit(const LabeledCorpus& corpus);

  std::vector<Instance> instances_;
  LabelScheme scheme_;
  std::string emotion_;
  OrderPolicy order_;
  std::string name_;
  std::optional<UnitRescale> unit_rescale_;
};

enum class CorpusFormat { tsv, csv, jsonl };

std::string_view to_string(CorpusFormat f);
CorpusFormat parse_corpus_format(std::string_view s);

/// Which columns (or JSONL fields) carry what.
struct ColumnMapping {
  std::string text_column = "text";
  std::string label_column = "label";
  std::string id_column;         // empty: ids are the 0-based row index
  std::string timestamp_column;  // required for by_timestamp ordering
  std::optional<CorpusFormat> format;  // default: from the file extension
  /// Optional textual label -> number map, e.g. {"positive": 1}.
  std::map<std::string, double> label_map;
};

LabeledCorpus load_corpus(const std::filesystem::path& path, const ColumnMapping& mapping,
                          const LabelScheme& scheme, OrderPolicy order = {},
                          std::string emotion = {});

/// Parses corpus text already in memory.
LabeledCorpus parse_corpus(std::string_view text, CorpusFormat format, const ColumnMapping& mapping,
                           const LabelScheme& scheme, OrderPolicy order = {},
                           std::string emotion = {}, std::string name = "<memory>");

/// Affine map of categorical gold labels onto [0,1].
LabeledCorpus relabel_to_unit(const LabeledCorpus& corpus);

/// TSV with header id, text, label (and timestamp when any instance has one).
std::string serialize_corpus_tsv(const LabeledCorpus& corpus);
void save_corpus_tsv(const LabeledCorpus& corpus, const std::filesystem::path& path);

}  // namespace emoarc
