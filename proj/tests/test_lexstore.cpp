#include <doctest.h>

#include <cstdio>
#include <random>
#include <string>

#include "emoarc/error.hpp"
#include "emoarc/lexstore.hpp"
#include "support.hpp"

using namespace emoarc;

namespace {

LexiconLoadOptions two_column(double lo, double hi) {
  LexiconLoadOptions o;
  o.range = ScoreRange{lo, hi, {}};
  return o;
}

EmotionLexicon small_signed() {
  return EmotionLexicon("valence", Granularity::continuous, ScoreRange{-1, 1, {}}, {{"good", 0.8}, {"bad", -0.6}});
}

ErrorCategory category_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.category();
  }
  FAIL("expected an emoarc::Error");
  return ErrorCategory::internal;
}

}  // namespace

TEST_CASE("load two_column") {
  const auto lex = load_lexicon(testing::data("two_column.tsv"), two_column(-1, 1));
  CHECK(lex.size() == 2);
  CHECK(lex.lookup("good") == doctest::Approx(0.8));
  CHECK(lex.lookup("bad") == doctest::Approx(-0.6));
  CHECK(lex.range().lo == -1);
  CHECK(lex.range().hi == 1);
}

TEST_CASE("load nrc_emolex filters by emotion") {
  LexiconLoadOptions o;
  o.format = LexiconFormat::nrc_emolex;
  o.emotion = "anger";
  const auto anger = load_lexicon(testing::data("emolex.txt"), o);
  CHECK(anger.lookup("abandon") == 1.0);
  CHECK(anger.lookup("abba") == 0.0);
  CHECK(anger.granularity() == Granularity::categorical);
  o.emotion = "joy";
  const auto joy = load_lexicon(testing::data("emolex.txt"), o);
  CHECK(joy.lookup("abandon") == 0.0);
  CHECK(joy.lookup("abba") == 1.0);
  o.emotion = "surprise";
  CHECK(category_of([&] { load_lexicon(testing::data("emolex.txt"), o); }) == ErrorCategory::format);
}

TEST_CASE("load nrc_vad_column on a full-size file") {
  testing::TempDir dir("vad");
  std::string text = "Word\tValence\tArousal\tDominance\n";
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> score(-1.0, 1.0);
  const std::size_t rows = 20007;
  for (std::size_t i = 0; i < rows; ++i) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "w%zu\t%.3f\t%.3f\t%.3f\n", i, score(rng), score(rng), score(rng));
    text += buf;
  }
  testing::write_text(dir / "vad.tsv", text);

  LexiconLoadOptions o;
  o.format = LexiconFormat::nrc_vad_column;
  o.emotion = "arousal";
  const auto lex = load_lexicon(dir / "vad.tsv", o);
  CHECK(lex.size() == rows);
  CHECK(lex.stats().rows == rows);
  CHECK(lex.range().lo == -1);
  CHECK(lex.range().hi == 1);
  for (const auto& [term, s] : lex.entries()) {
    CHECK(s >= -1.0);
    CHECK(s <= 1.0);
  }
  o.emotion = "Dominance";
  CHECK(load_lexicon(dir / "vad.tsv", o).size() == rows);
  o.emotion = "fear";
  CHECK(category_of([&] { load_lexicon(dir / "vad.tsv", o); }) == ErrorCategory::format);
}

TEST_CASE("duplicates: last occurrence wins and is counted") {
  const auto lex = parse_lexicon("joy\t0.2\nsad\t0.1\njoy\t0.9\n", two_column(0, 1));
  CHECK(lex.lookup("joy") == 0.9);
  CHECK(lex.stats().duplicates == 1);
  CHECK(lex.size() == 2);
}

TEST_CASE("multiword entries are rejected and counted") {
  const auto lex = parse_lexicon("ice cream\t0.7\ncake\t0.6\n", two_column(0, 1));
  CHECK(lex.size() == 1);
  CHECK(lex.stats().multiword_rejected == 1);
  CHECK_FALSE(lex.lookup("ice cream"));
}

TEST_CASE("comments, header row and case folding") {
  const auto lex = parse_lexicon("# a comment\nterm\tscore\nHappy\t0.5\n", two_column(0, 1));
  CHECK(lex.size() == 1);
  CHECK(lex.lookup("happy") == 0.5);
}

TEST_CASE("malformed input is a format error") {
  CHECK(category_of([] { parse_lexicon("good\t0.8\nbad\n", two_column(-1, 1)); }) == ErrorCategory::format);
  CHECK(category_of([] { parse_lexicon("good\t0.8\nbad\tx\n", two_column(-1, 1)); }) == ErrorCategory::format);
  CHECK(category_of([] { parse_lexicon("good\t1.5\n", two_column(-1, 1)); }) == ErrorCategory::format);
  CHECK(category_of([] { load_lexicon("/nonexistent/lex.tsv", {}); }) == ErrorCategory::io);
}

TEST_CASE("range is inferred when not declared") {
  CHECK(parse_lexicon("a\t0.5\nb\t-0.5\n", {}).range().lo == -1);
  CHECK(parse_lexicon("a\t0.5\nb\t0.25\n", {}).range().lo == 0);
}

TEST_CASE("threshold_lexicon examples") {
  const EmotionLexicon unipolar("joy", Granularity::continuous, ScoreRange{0, 1, {}}, {{"good", 0.8}, {"ok", 0.3}});
  const auto kept = threshold_lexicon(unipolar, {0.5, ThresholdMode::signed_});
  CHECK(kept.size() == 1);
  CHECK(kept.lookup("good") == 0.8);
  CHECK_FALSE(kept.lookup("ok"));

  const auto lex = small_signed();
  CHECK(threshold_lexicon(lex, {0.5, ThresholdMode::magnitude}).size() == 2);
  const auto strict = threshold_lexicon(lex, {0.7, ThresholdMode::magnitude});
  CHECK(strict.size() == 1);
  CHECK(strict.lookup("good") == 0.8);
  CHECK_FALSE(strict.lookup("bad"));

  CHECK(threshold_lexicon(lex, {0.0, ThresholdMode::automatic}).entries() == lex.entries());
  CHECK(threshold_lexicon(unipolar, {0.0, ThresholdMode::signed_}).entries() == unipolar.entries());
  // The boundary is inclusive.
  CHECK(threshold_lexicon(unipolar, {0.3, ThresholdMode::signed_}).size() == 2);
}

TEST_CASE("automatic mode follows the range sign") {
  CHECK(resolve_mode(small_signed(), ThresholdMode::automatic) == ThresholdMode::magnitude);
  const EmotionLexicon unipolar("joy", Granularity::continuous, ScoreRange{0, 1, {}}, {{"a", 0.1}});
  CHECK(resolve_mode(unipolar, ThresholdMode::automatic) == ThresholdMode::signed_);
}

TEST_CASE("tau outside the range is rejected") {
  CHECK(category_of([] { threshold_lexicon(small_signed(), {1.5, ThresholdMode::magnitude}); }) ==
        ErrorCategory::invalid_argument);
  CHECK(category_of([] { threshold_lexicon(small_signed(), {-0.1, ThresholdMode::magnitude}); }) ==
        ErrorCategory::invalid_argument);
}

TEST_CASE("threshold monotonicity") {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> score(-1.0, 1.0);
  std::map<std::string, double, std::less<>> entries;
  for (int i = 0; i < 500; ++i) entries["t" + std::to_string(i)] = score(rng);
  const EmotionLexicon lex("valence", Granularity::continuous, ScoreRange{-1, 1, {}}, entries);
  for (auto mode : {ThresholdMode::magnitude, ThresholdMode::signed_}) {
    std::vector<double> taus;
    for (int i = 0; i <= 20; ++i) taus.push_back(i * 0.05);
    for (std::size_t i = 0; i + 1 < taus.size(); ++i) {
      const auto loose = threshold_lexicon(lex, {taus[i], mode});
      const auto tight = threshold_lexicon(lex, {taus[i + 1], mode});
      for (const auto& [term, s] : tight.entries()) CHECK(loose.lookup(term) == s);
      CHECK(tight.size() <= loose.size());
    }
  }
}

TEST_CASE("lookup") {
  const EmotionLexicon lex("v", Granularity::continuous, ScoreRange{0, 1, {}}, {{"good", 0.8}, {"meh", 0.1}});
  CHECK(lookup(lex, "good") == 0.8);
  CHECK_FALSE(lookup(lex, "movie"));
  CHECK_FALSE(lookup(threshold_lexicon(lex, {0.5, ThresholdMode::signed_}), "meh"));
}

TEST_CASE("serialize and reload round-trip") {
  testing::TempDir dir("lexrt");
  const EmotionLexicon cat("anger", Granularity::categorical, ScoreRange{0, 1, {0, 1}},
                           {{"rage", 1}, {"calm", 0}, {"über", 1}}, "test-src");
  const EmotionLexicon cont("valence", Granularity::continuous, ScoreRange{-1, 1, {}},
                            {{"good", 0.8}, {"bad", -0.6}, {"tiny", 1e-17}, {"third", 1.0 / 3.0}}, "other");
  for (const auto* lex : {&cat, &cont}) {
    save_lexicon(*lex, dir / "lex.tsv");
    const auto back = load_lexicon(dir / "lex.tsv", {});
    CHECK(back.entries() == lex->entries());
    CHECK(back.emotion() == lex->emotion());
    CHECK(back.granularity() == lex->granularity());
    CHECK(back.range() == lex->range());
    CHECK(back.provenance() == lex->provenance());
  }
}

TEST_CASE("constructor invariants") {
  CHECK(category_of([] {
          EmotionLexicon("v", Granularity::continuous, ScoreRange{0, 1, {}}, {{"Upper", 0.5}});
        }) == ErrorCategory::format);
  CHECK(category_of([] {
          EmotionLexicon("v", Granularity::categorical, ScoreRange{0, 1, {0, 1}}, {{"half", 0.5}});
        }) == ErrorCategory::format);
}
