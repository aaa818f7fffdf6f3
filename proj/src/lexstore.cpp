#include "emoarc/lexstore.hpp"

#include <algorithm>
#include <cmath>

#include "detail/strings.hpp"
#include "emoarc/error.hpp"
#include "emoarc/textprep.hpp"

namespace emoarc {

using detail::ascii_lower;
using detail::parse_double;
using detail::trim;

std::string_view to_string(Granularity g) {
  return g == Granularity::categorical ? "categorical" : "continuous";
}

std::string_view to_string(ThresholdMode m) {
  switch (m) {
    case ThresholdMode::automatic: return "auto";
    case ThresholdMode::magnitude: return "magnitude";
    case ThresholdMode::signed_: return "signed";
  }
  return "auto";
}

ThresholdMode parse_threshold_mode(std::string_view s) {
  const auto v = ascii_lower(s);
  if (v == "auto" || v == "automatic") return ThresholdMode::automatic;
  if (v == "magnitude") return ThresholdMode::magnitude;
  if (v == "signed") return ThresholdMode::signed_;
  fail(ErrorCategory::invalid_argument, "unknown threshold mode '" + std::string(s) + "'");
}

std::string_view to_string(LexiconFormat f) {
  switch (f) {
    case LexiconFormat::two_column: return "two_column";
    case LexiconFormat::nrc_emolex: return "nrc_emolex";
    case LexiconFormat::nrc_vad_column: return "nrc_vad_column";
  }
  return "two_column";
}

LexiconFormat parse_lexicon_format(std::string_view s) {
  const auto v = ascii_lower(s);
  if (v == "two_column") return LexiconFormat::two_column;
  if (v == "nrc_emolex") return LexiconFormat::nrc_emolex;
  if (v == "nrc_vad_column") return LexiconFormat::nrc_vad_column;
  fail(ErrorCategory::invalid_argument, "unknown lexicon format '" + std::string(s) + "'");
}

bool ScoreRange::is_label(double score) const noexcept {
  return std::binary_search(labels.begin(), labels.end(), score);
}

double ScoreRange::max_magnitude() const noexcept {
  return std::max(std::fabs(lo), std::fabs(hi));
}

EmotionLexicon::EmotionLexicon(std::string emotion, Granularity granularity, ScoreRange range,
                               std::map<std::string, double, std::less<>> entries,
                               std::string provenance, LoadStats stats)
    : emotion_(std::move(emotion)),
      granularity_(granularity),
      range_(std::move(range)),
      entries_(std::move(entries)),
      provenance_(std::move(provenance)),
      stats_(stats) {
  if (!(range_.lo <= range_.hi)) fail(ErrorCategory::format, "lexicon score range is empty");
  std::sort(range_.labels.begin(), range_.labels.end());
  range_.labels.erase(std::unique(range_.labels.begin(), range_.labels.end()),
                      range_.labels.end());
  if (granularity_ == Granularity::categorical && range_.labels.empty())
    fail(ErrorCategory::format, "categorical lexicon declares no label set");
  for (double l : range_.labels) {
    if (!range_.contains(l)) fail(ErrorCategory::format, "label outside score range");
  }
  for (const auto& [term, score] : entries_) {
    if (term.empty()) fail(ErrorCategory::format, "empty lexicon term");
    if (contains_whitespace(term)) fail(ErrorCategory::format, "lexicon term '" + term + "' contains whitespace");
    if (to_lower(term) != term) fail(ErrorCategory::format, "lexicon term '" + term + "' is not lowercase");
    if (!std::isfinite(score) || !range_.contains(score))
      fail(ErrorCategory::format, "score of '" + term + "' outside declared range");
    if (granularity_ == Granularity::categorical && !range_.is_label(score))
      fail(ErrorCategory::format, "score of '" + term + "' is not a declared label");
  }
}

std::optional<double> EmotionLexicon::lookup(std::string_view term) const {
  if (const auto it = entries_.find(term); it != entries_.end()) return it->second;
  return std::nullopt;
}

std::string EmotionLexicon::id() const {
  if (provenance_.empty()) return emotion_;
  if (emotion_.empty()) return provenance_;
  return provenance_ + ":" + emotion_;
}

namespace {

struct Metadata {
  std::optional<std::string> emotion;
  std::optional<Granularity> granularity;
  std::optional<std::pair<double, double>> range;
  std::optional<std::vector<double>> labels;
  std::optional<std::string> provenance;
};

std::vector<double> parse_number_list(std::string_view s, std::string_view source) {
  std::vector<double> out;
  for (auto part : detail::split(s, ' ')) {
    part = trim(part);
    if (part.empty()) continue;
    const auto v = parse_double(part);
    if (!v) fail(ErrorCategory::format, std::string(source) + ": bad number in metadata");
    out.push_back(*v);
  }
  return out;
}

// Recognizes "# key: value" lines; other comments are ignored.
void read_metadata(std::string_view line, Metadata& meta, std::string_view source) {
  auto body = trim(line.substr(1));
  const auto colon = body.find(':');
  if (colon == std::string_view::npos) return;
  const auto key = ascii_lower(trim(body.substr(0, colon)));
  const auto value = trim(body.substr(colon + 1));
  if (key == "emotion") {
    meta.emotion = std::string(value);
  } else if (key == "granularity") {
    const auto v = ascii_lower(value);
    if (v == "categorical") meta.granularity = Granularity::categorical;
    else if (v == "continuous") meta.granularity = Granularity::continuous;
    else fail(ErrorCategory::format, std::string(source) + ": unknown granularity '" + v + "'");
  } else if (key == "range") {
    const auto nums = parse_number_list(value, source);
    if (nums.size() != 2) fail(ErrorCategory::format, std::string(source) + ": range needs two numbers");
    meta.range = std::pair{nums[0], nums[1]};
  } else if (key == "labels") {
    meta.labels = parse_number_list(value, source);
  } else if (key == "provenance") {
    meta.provenance = std::string(value);
  }
}

struct RawRow {
  std::string term;
  double score;
  std::size_t line_no;
};

[[noreturn]] void malformed(std::string_view source, std::size_t line_no, const std::string& why) {
  fail(ErrorCategory::format,
       std::string(source) + ":" + std::to_string(line_no) + ": " + why);
}

double parse_score(std::string_view field, std::string_view source, std::size_t line_no) {
  const auto v = parse_double(field);
  if (!v || !std::isfinite(*v))
    malformed(source, line_no, "non-numeric score '" + std::string(trim(field)) + "'");
  return *v;
}

}  // namespace

EmotionLexicon parse_lexicon(std::string_view text, const LexiconLoadOptions& options,
                             std::string_view source) {
  Metadata meta;
  std::vector<RawRow> rows;
  LoadStats stats;

  const auto all_lines = detail::lines(text);
  bool seen_data = false;
  std::size_t vad_column = 0;
  std::size_t vad_width = 0;
  bool emotion_seen = false;

  for (std::size_t i = 0; i < all_lines.size(); ++i) {
    const std::size_t line_no = i + 1;
    auto line = all_lines[i];
    if (i == 0 && line.substr(0, 3) == "\xEF\xBB\xBF") line.remove_prefix(3);
    if (trim(line).empty()) continue;
    if (line.front() == '#') {
      read_metadata(line, meta, source);
      continue;
    }
    const auto fields = detail::split(line, '\t');
    const bool first = !seen_data;
    seen_data = true;

    switch (options.format) {
      case LexiconFormat::two_column: {
        if (fields.size() != 2) malformed(source, line_no, "expected 2 tab-separated columns");
        if (first && !parse_double(fields[1])) continue;  // optional header
        rows.push_back({std::string(trim(fields[0])), parse_score(fields[1], source, line_no), line_no});
        break;
      }
      case LexiconFormat::nrc_emolex: {
        if (fields.size() != 3) malformed(source, line_no, "expected 3 tab-separated columns");
        if (first && !parse_double(fields[2])) continue;
        if (ascii_lower(trim(fields[1])) != ascii_lower(options.emotion)) continue;
        emotion_seen = true;
        rows.push_back({std::string(trim(fields[0])), parse_score(fields[2], source, line_no), line_no});
        break;
      }
      case LexiconFormat::nrc_vad_column: {
        if (first) {
          if (fields.size() < 2) malformed(source, line_no, "header needs a term column and at least one dimension");
          vad_width = fields.size();
          for (std::size_t c = 1; c < fields.size(); ++c) {
            if (ascii_lower(trim(fields[c])) == ascii_lower(options.emotion)) vad_column = c;
          }
          if (vad_column == 0)
            fail(ErrorCategory::format, std::string(source) + ": dimension '" + options.emotion +
                                            "' not found in header");
          emotion_seen = true;
          continue;
        }
        if (fields.size() != vad_width)
          malformed(source, line_no, "expected " + std::to_string(vad_width) + " columns");
        rows.push_back({std::string(trim(fields[0])), parse_score(fields[vad_column], source, line_no), line_no});
        break;
      }
    }
  }

  if (options.format != LexiconFormat::two_column && !emotion_seen)
    fail(ErrorCategory::format, std::string(source) + ": emotion '" + options.emotion + "' absent");

  Granularity granularity = Granularity::continuous;
  if (options.granularity) granularity = *options.granularity;
  else if (meta.granularity) granularity = *meta.granularity;
  else if (options.format == LexiconFormat::nrc_emolex) granularity = Granularity::categorical;

  ScoreRange range;
  if (options.range) {
    range = *options.range;
  } else if (meta.range) {
    range.lo = meta.range->first;
    range.hi = meta.range->second;
  } else if (options.format == LexiconFormat::nrc_emolex) {
    range = {0.0, 1.0, {}};
  } else {
    const bool any_negative =
        std::any_of(rows.begin(), rows.end(), [](const RawRow& r) { return r.score < 0.0; });
    range.lo = any_negative ? -1.0 : 0.0;
    range.hi = 1.0;
  }
  if (range.labels.empty() && meta.labels) range.labels = *meta.labels;
  if (granularity == Granularity::categorical && range.labels.empty()) {
    range.labels = range.lo < 0.0 ? std::vector<double>{-1.0, 0.0, 1.0} : std::vector<double>{0.0, 1.0};
  }
  if (granularity == Granularity::continuous) range.labels.clear();

  std::map<std::string, double, std::less<>> entries;
  for (auto& row : rows) {
    ++stats.rows;
    if (row.term.empty()) malformed(source, row.line_no, "empty term");
    if (contains_whitespace(row.term)) {
      ++stats.multiword_rejected;
      continue;
    }
    if (!range.contains(row.score))
      malformed(source, row.line_no, "score " + detail::format_double(row.score) + " outside declared range");
    if (granularity == Granularity::categorical &&
        std::find(range.labels.begin(), range.labels.end(), row.score) == range.labels.end())
      malformed(source, row.line_no, "score " + detail::format_double(row.score) + " is not a declared label");
    auto [it, inserted] = entries.insert_or_assign(to_lower(row.term), row.score);
    if (!inserted) ++stats.duplicates;
  }

  std::string emotion = options.emotion;
  if (emotion.empty() && meta.emotion) emotion = *meta.emotion;
  std::string provenance = options.provenance;
  if (provenance.empty() && meta.provenance) provenance = *meta.provenance;

  return EmotionLexicon(std::move(emotion), granularity, std::move(range), std::move(entries),
                        std::move(provenance), stats);
}

EmotionLexicon load_lexicon(const std::filesystem::path& path, const LexiconLoadOptions& options) {
  if (!std::filesystem::exists(path))
    fail(ErrorCategory::io, "lexicon file '" + path.string() + "' does not exist");
  const auto text = detail::read_file(path.string());
  return parse_lexicon(text, options, path.string());
}

std::string serialize_lexicon(const EmotionLexicon& lex) {
  std::string out;
  out += "# emotion: " + lex.emotion() + "\n";
  out += "# granularity: " + std::string(to_string(lex.granularity())) + "\n";
  out += "# range: " + detail::format_double(lex.range().lo) + " " +
         detail::format_double(lex.range().hi) + "\n";
  if (!lex.range().labels.empty()) {
    out += "# labels:";
    for (double l : lex.range().labels) out += " " + detail::format_double(l);
    out += "\n";
  }
  if (!lex.provenance().empty()) out += "# provenance: " + lex.provenance() + "\n";
  for (const auto& [term, score] : lex.entries()) {
    out += term;
    out += '\t';
    out += detail::format_double(score);
    out += '\n';
  }
  return out;
}

void save_lexicon(const EmotionLexicon& lex, const std::filesystem::path& path) {
  detail::write_file(path.string(), serialize_lexicon(lex));
}

ThresholdMode resolve_mode(const EmotionLexicon& lex, ThresholdMode mode) {
  if (mode != ThresholdMode::automatic) return mode;
  return lex.range().is_signed() ? ThresholdMode::magnitude : ThresholdMode::signed_;
}

EmotionLexicon threshold_lexicon(const EmotionLexicon& lex, const ThresholdSpec& spec) {
  const double limit = lex.range().max_magnitude();
  if (!(spec.tau >= 0.0) || spec.tau > limit)
    fail(ErrorCategory::invalid_argument,
         "threshold " + detail::format_double(spec.tau) + " outside [0, " + detail::format_double(limit) + "]");
  const auto mode = resolve_mode(lex, spec.mode);
  std::map<std::string, double, std::less<>> kept;
  for (const auto& [term, score] : lex.entries()) {
    const double key = mode == ThresholdMode::magnitude ? std::fabs(score) : score;
    if (key >= spec.tau) kept.emplace_hint(kept.end(), term, score);
  }
  return EmotionLexicon(lex.emotion(), lex.granularity(), lex.range(), std::move(kept),
                        lex.provenance(), lex.stats());
}

}  // namespace emoarc
