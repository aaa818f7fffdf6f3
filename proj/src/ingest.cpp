#include "emoarc/ingest.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <set>
#include <unordered_set>

#include <json.hpp>

#include "detail/strings.hpp"
#include "emoarc/error.hpp"
#include "emoarc/rng.hpp"

namespace emoarc {

using detail::ascii_lower;
using detail::parse_double;
using detail::trim;

std::string_view to_string(LabelKind k) {
  return k == LabelKind::categorical ? "categorical" : "continuous";
}

LabelScheme LabelScheme::categorical(std::vector<double> labels) {
  std::sort(labels.begin(), labels.end());
  labels.erase(std::unique(labels.begin(), labels.end()), labels.end());
  LabelScheme s;
  s.kind = LabelKind::categorical;
  s.labels = std::move(labels);
  if (!s.labels.empty()) {
    s.lo = s.labels.front();
    s.hi = s.labels.back();
  }
  return s;
}

LabelScheme LabelScheme::continuous(double lo, double hi) {
  LabelScheme s;
  s.kind = LabelKind::continuous;
  s.lo = lo;
  s.hi = hi;
  return s;
}

LabelScheme LabelScheme::integer_range(int first, int last) {
  std::vector<double> labels;
  for (int v = first; v <= last; ++v) labels.push_back(v);
  return categorical(std::move(labels));
}

double LabelScheme::chance_accuracy() const {
  if (kind != LabelKind::categorical || labels.empty())
    fail(ErrorCategory::invalid_argument, "chance accuracy needs a categorical scheme");
  return 1.0 / static_cast<double>(labels.size());
}

double LabelScheme::min_label() const noexcept {
  return kind == LabelKind::categorical && !labels.empty() ? labels.front() : lo;
}

double LabelScheme::max_label() const noexcept {
  return kind == LabelKind::categorical && !labels.empty() ? labels.back() : hi;
}

bool LabelScheme::conforms(double gold) const noexcept {
  if (!std::isfinite(gold)) return false;
  if (kind == LabelKind::categorical) return std::binary_search(labels.begin(), labels.end(), gold);
  return gold >= lo && gold <= hi;
}

void LabelScheme::validate() const {
  if (kind == LabelKind::categorical) {
    if (labels.size() < 2) fail(ErrorCategory::invalid_argument, "categorical scheme needs >= 2 distinct labels");
    if (!std::is_sorted(labels.begin(), labels.end()) ||
        std::adjacent_find(labels.begin(), labels.end()) != labels.end())
      fail(ErrorCategory::invalid_argument, "categorical labels must be sorted and distinct");
  } else if (!(lo < hi)) {
    fail(ErrorCategory::invalid_argument, "continuous scheme needs lo < hi");
  }
}

std::string to_string(const OrderPolicy& p) {
  switch (p.kind) {
    case OrderKind::as_given: return "as_given";
    case OrderKind::by_timestamp: return "by_timestamp";
    case OrderKind::seeded_shuffle: return "seeded_shuffle:" + std::to_string(p.seed);
  }
  return "as_given";
}

OrderPolicy parse_order_policy(std::string_view s) {
  const auto v = ascii_lower(trim(s));
  if (v == "as_given") return OrderPolicy::as_given();
  if (v == "by_timestamp") return OrderPolicy::by_timestamp();
  constexpr std::string_view prefix = "seeded_shuffle";
  if (v.rfind(prefix, 0) == 0) {
    std::uint64_t seed = 0;
    if (v.size() > prefix.size()) {
      if (v[prefix.size()] != ':' && v[prefix.size()] != '=')
        fail(ErrorCategory::invalid_argument, "bad order policy '" + std::string(s) + "'");
      const auto digits = v.substr(prefix.size() + 1);
      const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), seed);
      if (ec != std::errc{} || ptr != digits.data() + digits.size())
        fail(ErrorCategory::invalid_argument, "bad shuffle seed in '" + std::string(s) + "'");
    }
    return OrderPolicy::shuffled(seed);
  }
  fail(ErrorCategory::invalid_argument, "unknown order policy '" + std::string(s) + "'");
}

LabeledCorpus::LabeledCorpus(std::vector<Instance> instances, LabelScheme scheme, std::string emotion,
                             OrderPolicy order, std::string name)
    : instances_(std::move(instances)),
      scheme_(std::move(scheme)),
      emotion_(std::move(emotion)),
      order_(order),
      name_(std::move(name)) {
  scheme_.validate();
  std::unordered_set<std::string_view> ids;
  for (const auto& inst : instances_) {
    if (!scheme_.conforms(inst.gold))
      fail(ErrorCategory::format, "instance '" + inst.id + "': label " + detail::format_double(inst.gold) +
                                      " does not conform to the label scheme");
    if (!ids.insert(inst.id).second) fail(ErrorCategory::format, "duplicate instance id '" + inst.id + "'");
  }
  switch (order_.kind) {
    case OrderKind::as_given:
      break;
    case OrderKind::by_timestamp:
      for (const auto& inst : instances_) {
        if (!inst.timestamp)
          fail(ErrorCategory::format, "instance '" + inst.id + "' has no timestamp (by_timestamp ordering)");
      }
      std::stable_sort(instances_.begin(), instances_.end(),
                       [](const Instance& a, const Instance& b) { return *a.timestamp < *b.timestamp; });
      break;
    case OrderKind::seeded_shuffle: {
      rng::Stream stream(rng::mix(order_.seed, 0x53485546464C45ull));
      for (std::size_t i = instances_.size(); i > 1; --i) {
        const auto j = static_cast<std::size_t>(stream.below(i));
        std::swap(instances_[i - 1], instances_[j]);
      }
      break;
    }
  }
}

std::vector<double> LabeledCorpus::gold() const {
  std::vector<double> out;
  out.reserve(instances_.size());
  for (const auto& inst : instances_) out.push_back(inst.gold);
  return out;
}

std::string_view to_string(CorpusFormat f) {
  switch (f) {
    case CorpusFormat::tsv: return "tsv";
    case CorpusFormat::csv: return "csv";
    case CorpusFormat::jsonl: return "jsonl";
  }
  return "tsv";
}

CorpusFormat parse_corpus_format(std::string_view s) {
  const auto v = ascii_lower(trim(s));
  if (v == "tsv") return CorpusFormat::tsv;
  if (v == "csv") return CorpusFormat::csv;
  if (v == "jsonl" || v == "ndjson") return CorpusFormat::jsonl;
  fail(ErrorCategory::invalid_argument, "unknown corpus format '" + std::string(s) + "'");
}

namespace {

using Row = std::vector<std::string>;

[[noreturn]] void bad_row(std::string_view source, std::size_t row, const std::string& why) {
  fail(ErrorCategory::format, std::string(source) + ": row " + std::to_string(row) + ": " + why);
}

std::vector<Row> read_tsv(std::string_view text) {
  std::vector<Row> rows;
  for (auto line : detail::lines(text)) {
    if (trim(line).empty()) continue;
    Row row;
    for (auto f : detail::split(line, '\t')) row.emplace_back(f);
    rows.push_back(std::move(row));
  }
  return rows;
}

// RFC 4180: quoted fields may hold separators, quotes ("") and newlines.
std::vector<Row> read_csv(std::string_view text, std::string_view source) {
  std::vector<Row> rows;
  Row row;
  std::string field;
  bool quoted = false;
  bool field_started = false;
  auto end_field = [&] {
    row.push_back(std::move(field));
    field.clear();
    field_started = false;
  };
  auto end_row = [&] {
    end_field();
    const bool blank = row.size() == 1 && trim(row[0]).empty();
    if (!blank) rows.push_back(std::move(row));
    row.clear();
  };
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        field += c;
      }
    } else if (c == '"' && !field_started) {
      quoted = true;
      field_started = true;
    } else if (c == ',') {
      end_field();
    } else if (c == '\n') {
      end_row();
    } else if (c == '\r') {
      continue;
    } else {
      field += c;
      field_started = true;
    }
  }
  if (quoted) fail(ErrorCategory::format, std::string(source) + ": unterminated quoted field");
  if (field_started || !row.empty()) end_row();
  return rows;
}

std::optional<double> parse_timestamp(std::string_view s) {
  s = trim(s);
  if (s.empty()) return std::nullopt;
  if (auto v = parse_double(s)) return v;
  int y = 0, mo = 0, d = 0, h = 0, mi = 0;
  double sec = 0.0;
  const std::string str(s);
  const int n = std::sscanf(str.c_str(), "%d-%d-%d%*[T ]%d:%d:%lf", &y, &mo, &d, &h, &mi, &sec);
  if (n != 3 && n < 5) return std::nullopt;
  using namespace std::chrono;
  const year_month_day ymd{year{y}, month{static_cast<unsigned>(mo)}, day{static_cast<unsigned>(d)}};
  if (!ymd.ok()) return std::nullopt;
  const auto days = sys_days{ymd}.time_since_epoch().count();
  return static_cast<double>(days) * 86400.0 + h * 3600.0 + mi * 60.0 + sec;
}

double parse_label(std::string_view raw, const ColumnMapping& mapping, std::string_view source,
                   std::size_t row) {
  const auto t = trim(raw);
  if (!mapping.label_map.empty()) {
    if (const auto it = mapping.label_map.find(std::string(t)); it != mapping.label_map.end())
      return it->second;
  }
  const auto v = parse_double(t);
  if (!v) bad_row(source, row, "unparseable label '" + std::string(t) + "'");
  return *v;
}

std::vector<Instance> instances_from_table(const std::vector<Row>& rows, const ColumnMapping& mapping,
                                           std::string_view source) {
  if (rows.empty()) fail(ErrorCategory::format, std::string(source) + ": missing header row");
  const Row& header = rows.front();
  auto column = [&](const std::string& name, bool required) -> std::optional<std::size_t> {
    if (name.empty()) return std::nullopt;
    for (std::size_t c = 0; c < header.size(); ++c) {
      if (trim(header[c]) == name) return c;
    }
    if (required)
      fail(ErrorCategory::format, std::string(source) + ": column '" + name + "' not in header");
    return std::nullopt;
  };
  const auto text_col = *column(mapping.text_column, true);
  const auto label_col = *column(mapping.label_column, true);
  const auto id_col = column(mapping.id_column, true);
  const auto ts_col = column(mapping.timestamp_column, true);

  std::vector<Instance> out;
  out.reserve(rows.size() - 1);
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const Row& row = rows[r];
    if (row.size() != header.size())
      bad_row(source, r, "expected " + std::to_string(header.size()) + " columns, got " +
                             std::to_string(row.size()));
    Instance inst;
    inst.id = id_col ? std::string(trim(row[*id_col])) : std::to_string(r - 1);
    inst.text = row[text_col];
    inst.gold = parse_label(row[label_col], mapping, source, r);
    if (ts_col) {
      inst.timestamp = parse_timestamp(row[*ts_col]);
      if (!inst.timestamp && !trim(row[*ts_col]).empty())
        bad_row(source, r, "unparseable timestamp '" + row[*ts_col] + "'");
    }
    out.push_back(std::move(inst));
  }
  return out;
}

std::vector<Instance> instances_from_jsonl(std::string_view text, const ColumnMapping& mapping,
                                           std::string_view source) {
  using nlohmann::json;
  std::vector<Instance> out;
  std::size_t index = 0;
  auto lines = detail::lines(text);
  for (std::size_t ln = 0; ln < lines.size(); ++ln) {
    if (trim(lines[ln]).empty()) continue;
    const std::size_t row = ln + 1;
    json obj;
    try {
      obj = json::parse(lines[ln]);
    } catch (const json::parse_error& e) {
      bad_row(source, row, std::string("invalid JSON: ") + e.what());
    }
    if (!obj.is_object()) bad_row(source, row, "expected a JSON object");
    auto field = [&](const std::string& name) -> const json* {
      const auto it = obj.find(name);
      return it == obj.end() ? nullptr : &*it;
    };
    Instance inst;
    const json* t = field(mapping.text_column);
    if (!t || !t->is_string()) bad_row(source, row, "missing string field '" + mapping.text_column + "'");
    inst.text = t->get<std::string>();
    const json* l = field(mapping.label_column);
    if (!l) bad_row(source, row, "missing field '" + mapping.label_column + "'");
    if (l->is_number()) inst.gold = l->get<double>();
    else if (l->is_string()) inst.gold = parse_label(l->get<std::string>(), mapping, source, row);
    else bad_row(source, row, "label must be a number or string");
    if (!mapping.id_column.empty()) {
      const json* i = field(mapping.id_column);
      if (!i) bad_row(source, row, "missing field '" + mapping.id_column + "'");
      inst.id = i->is_string() ? i->get<std::string>() : i->dump();
    } else {
      inst.id = std::to_string(index);
    }
    if (!mapping.timestamp_column.empty()) {
      if (const json* ts = field(mapping.timestamp_column)) {
        if (ts->is_number()) inst.timestamp = ts->get<double>();
        else if (ts->is_string()) inst.timestamp = parse_timestamp(ts->get<std::string>());
        if (!inst.timestamp) bad_row(source, row, "unparseable timestamp");
      }
    }
    out.push_back(std::move(inst));
    ++index;
  }
  return out;
}

CorpusFormat format_from_extension(const std::filesystem::path& path) {
  const auto ext = ascii_lower(path.extension().string());
  if (ext == ".csv") return CorpusFormat::csv;
  if (ext == ".jsonl" || ext == ".ndjson") return CorpusFormat::jsonl;
  return CorpusFormat::tsv;
}

}  // namespace

LabeledCorpus parse_corpus(std::string_view text, CorpusFormat format, const ColumnMapping& mapping,
                           const LabelScheme& scheme, OrderPolicy order, std::string emotion,
                           std::string name) {
  scheme.validate();
  if (text.substr(0, 3) == "\xEF\xBB\xBF") text.remove_prefix(3);
  if (order.kind == OrderKind::by_timestamp && mapping.timestamp_column.empty())
    fail(ErrorCategory::invalid_argument, "by_timestamp ordering needs a timestamp column");
  std::vector<Instance> instances;
  switch (format) {
    case CorpusFormat::tsv: instances = instances_from_table(read_tsv(text), mapping, name); break;
    case CorpusFormat::csv: instances = instances_from_table(read_csv(text, name), mapping, name); break;
    case CorpusFormat::jsonl: instances = instances_from_jsonl(text, mapping, name); break;
  }
  for (std::size_t i = 0; i < instances.size(); ++i) {
    if (!scheme.conforms(instances[i].gold))
      fail(ErrorCategory::format, name + ": instance '" + instances[i].id + "': label " +
                                      detail::format_double(instances[i].gold) + " outside the label scheme");
  }
  return LabeledCorpus(std::move(instances), scheme, std::move(emotion), order, std::move(name));
}

LabeledCorpus load_corpus(const std::filesystem::path& path, const ColumnMapping& mapping,
                          const LabelScheme& scheme, OrderPolicy order, std::string emotion) {
  if (!std::filesystem::exists(path))
    fail(ErrorCategory::io, "corpus file '" + path.string() + "' does not exist");
  const auto text = detail::read_file(path.string());
  const auto format = mapping.format.value_or(format_from_extension(path));
  auto corpus = parse_corpus(text, format, mapping, scheme, order, std::move(emotion),
                             path.stem().string());
  return corpus;
}

LabeledCorpus relabel_to_unit(const LabeledCorpus& corpus) {
  const auto& scheme = corpus.scheme();
  if (scheme.kind != LabelKind::categorical)
    fail(ErrorCategory::invalid_argument, "relabel_to_unit needs a categorical scheme");
  const double lo = scheme.min_label();
  const double span = scheme.max_label() - lo;
  if (!(span > 0.0)) fail(ErrorCategory::invalid_argument, "degenerate single-label scheme");
  auto map = [&](double v) { return (v - lo) / span; };
  std::vector<double> labels;
  for (double l : scheme.labels) labels.push_back(map(l));
  auto instances = corpus.instances();
  for (auto& inst : instances) inst.gold = map(inst.gold);
  // Already ordered; keep that order rather than re-applying the policy.
  LabeledCorpus out(std::move(instances), LabelScheme::categorical(std::move(labels)), corpus.emotion(),
                    OrderPolicy::as_given(), corpus.name());
  // Unit labels such as 1/6 are inexact, so their window sums are not an exact
  // affine image of the original sums. Keeping the source labels lets gold_arc
  // average those instead and map the means, which keeps every rank and tie.
  if (corpus.unit_rescale_) {
    out.unit_rescale_ = corpus.unit_rescale_;  // the map onto [0, 1] is then the identity
  } else {
    out.unit_rescale_ = UnitRescale{scheme.labels, lo, span};
  }
  return out;
}

std::string serialize_corpus_tsv(const LabeledCorpus& corpus) {
  const bool with_ts = std::any_of(corpus.instances().begin(), corpus.instances().end(),
                                   [](const Instance& i) { return i.timestamp.has_value(); });
  std::string out = with_ts ? "id\ttext\tlabel\ttimestamp\n" : "id\ttext\tlabel\n";
  for (const auto& inst : corpus.instances()) {
    if (inst.text.find_first_of("\t\n\r") != std::string::npos)
      fail(ErrorCategory::format, "instance '" + inst.id + "' text contains a tab or newline");
    out += inst.id;
    out += '\t';
    out += inst.text;
    out += '\t';
    out += detail::format_double(inst.gold);
    if (with_ts) {
      out += '\t';
      if (inst.timestamp) out += detail::format_double(*inst.timestamp);
    }
    out += '\n';
  }
  return out;
}

void save_corpus_tsv(const LabeledCorpus& corpus, const std::filesystem::path& path) {
  detail::write_file(path.string(), serialize_corpus_tsv(corpus));
}

}  // namespace emoarc
