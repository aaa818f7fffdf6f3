#include <doctest.h>

#include <cmath>
#include <numeric>
#include <random>

#include "emoarc/arcgen.hpp"
#include "emoarc/error.hpp"
#include "emoarc/evaluate.hpp"
#include "oracles/reference.hpp"
#include "support.hpp"

using namespace emoarc;

namespace {

ErrorCategory category_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.category();
  }
  FAIL("expected an emoarc::Error");
  return ErrorCategory::internal;
}

LabeledCorpus corpus_of(const std::vector<double>& gold, const std::vector<std::string>& texts,
                        const LabelScheme& scheme) {
  std::vector<Instance> inst;
  for (std::size_t i = 0; i < gold.size(); ++i) inst.push_back({std::to_string(i), texts[i], gold[i], {}});
  return LabeledCorpus(inst, scheme, "test");
}

LabeledCorpus corpus_of(const std::vector<double>& gold, const LabelScheme& scheme) {
  return corpus_of(gold, std::vector<std::string>(gold.size(), "x"), scheme);
}

ArcConfig bin(std::size_t b, std::size_t stride = 1) {
  ArcConfig c;
  c.bin_size = b;
  c.stride = stride;
  return c;
}

const EmotionLexicon valence("valence", Granularity::continuous, ScoreRange{-1, 1, {}},
                             {{"good", 0.8}, {"bad", -0.6}});

}  // namespace

TEST_CASE("gold_arc examples") {
  const auto c = corpus_of({0, 1, 1, 0}, LabelScheme::integer_range(0, 1));
  const auto arc = gold_arc(c, bin(2));
  CHECK(arc.values == std::vector<double>{0.5, 1.0, 0.5});
  CHECK(arc.window_starts == std::vector<std::size_t>{0, 1, 2});

  for (double x : {-1.0, 0.0, 1.0}) {
    const auto one = corpus_of({x}, LabelScheme::integer_range(-1, 1));
    CHECK(gold_arc(one, bin(1)).values == std::vector<double>{x});
  }
}

TEST_CASE("gold_arc matches a prefix-sum oracle exactly") {
  std::vector<double> gold;
  std::vector<long long> ints;
  for (int i = 0; i < 300; ++i) {
    gold.push_back(i % 4);
    ints.push_back(i % 4);
  }
  const auto arc = gold_arc(corpus_of(gold, LabelScheme::integer_range(0, 3)), bin(100));
  CHECK(arc.values == ref::prefix_window_means(ints, 100));
  CHECK(arc.size() == 201);
}

TEST_CASE("window count and value bounds") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + rng() % 500;
    const std::size_t b = 1 + rng() % n;
    const std::size_t s = 1 + rng() % 20;
    std::vector<double> gold(n);
    for (auto& g : gold) g = static_cast<double>(rng() % 5);
    const auto arc = gold_arc(corpus_of(gold, LabelScheme::integer_range(0, 4)), bin(b, s));
    CHECK(arc.size() == (n - b) / s + 1);
    CHECK(window_count(n, b, s) == arc.size());
    CHECK(arc.values == ref::window_means(gold, b, s));
    for (double v : arc.values) {
      CHECK(v >= 0.0);
      CHECK(v <= 4.0);
    }
  }
}

TEST_CASE("arc config validation") {
  const auto c = corpus_of({0, 1, 1}, LabelScheme::integer_range(0, 1));
  CHECK(category_of([&] { gold_arc(c, bin(4)); }) == ErrorCategory::invalid_argument);
  CHECK(category_of([&] { gold_arc(c, bin(0)); }) == ErrorCategory::invalid_argument);
  CHECK(category_of([&] { gold_arc(c, bin(1, 0)); }) == ErrorCategory::invalid_argument);
}

TEST_CASE("score_instance examples") {
  CHECK(score_instance({"good", "movie"}, valence, OovPolicy::drop_na) == doctest::Approx(0.8));
  CHECK(score_instance({"good", "movie"}, valence, OovPolicy::zero) == doctest::Approx(0.4));
  CHECK_FALSE(score_instance({"the", "a"}, valence, OovPolicy::drop_na));
  CHECK(score_instance({"the", "a"}, valence, OovPolicy::zero) == 0.0);
  CHECK_FALSE(score_instance({}, valence, OovPolicy::zero));

  const EmotionLexicon anger("anger", Granularity::categorical, ScoreRange{0, 1, {0, 1}},
                             {{"rage", 1}, {"fury", 1}, {"calm", 0}});
  const TokenList tokens{"rage", "x", "fury", "y", "z", "rage", "calm", "w", "v", "u"};
  CHECK(score_instance(tokens, anger, OovPolicy::zero) == doctest::Approx(0.3));
}

TEST_CASE("predicted_arc examples") {
  SUBCASE("absent instance scores are skipped") {
    const auto c = corpus_of({1, 0, 0}, {"good", "nothing", "bad good good"}, LabelScheme::integer_range(-1, 1));
    // scores: 0.8, absent, (−0.6+0.8+0.8)/3 = 0.333..
    const EmotionLexicon lex("valence", Granularity::continuous, ScoreRange{-1, 1, {}},
                             {{"good", 0.8}, {"bad", -0.4}});
    const auto arc = predicted_arc(c, lex, bin(3));
    REQUIRE(arc.size() == 1);
    CHECK(arc.values[0] == doctest::Approx((0.8 + (-0.4 + 0.8 + 0.8) / 3.0) / 2.0));
  }
  SUBCASE("scores 0.8, absent, 0.2 average to 0.5") {
    const EmotionLexicon lex("valence", Granularity::continuous, ScoreRange{-1, 1, {}}, {{"hi", 0.8}, {"lo", 0.2}});
    const auto c = corpus_of({0, 0, 0}, {"hi", "unknown", "lo"}, LabelScheme::integer_range(0, 1));
    const auto arc = predicted_arc(c, lex, bin(3));
    CHECK(arc.values == std::vector<double>{0.5});
  }
  SUBCASE("threshold above every score leaves empty windows") {
    const auto c = corpus_of({0, 1}, {"good", "bad"}, LabelScheme::integer_range(0, 1));
    ArcConfig cfg = bin(1);
    cfg.threshold = ThresholdSpec{0.9, ThresholdMode::magnitude};
    CHECK(category_of([&] { predicted_arc(c, valence, cfg); }) == ErrorCategory::empty_window);
  }
  SUBCASE("perfect lexicon reproduces the gold arc") {
    const EmotionLexicon lex("valence", Granularity::categorical, ScoreRange{-1, 1, {-1, 0, 1}},
                             {{"neg", -1}, {"neu", 0}, {"pos", 1}});
    std::mt19937_64 rng(3);
    std::vector<double> gold;
    std::vector<std::string> texts;
    const char* words[] = {"neg", "neu", "pos"};
    for (int i = 0; i < 400; ++i) {
      const int g = static_cast<int>(rng() % 3);
      gold.push_back(g - 1);
      texts.push_back(std::string(words[g]) + " filler " + words[g]);
    }
    const auto c = corpus_of(gold, texts, LabelScheme::integer_range(-1, 1));
    for (std::size_t b : {1u, 7u, 50u, 400u}) {
      CHECK(predicted_arc(c, lex, bin(b)).values == gold_arc(c, bin(b)).values);
    }
  }
}

TEST_CASE("0/1 lexicon under window_word_pool counts words") {
  const EmotionLexicon anger("anger", Granularity::categorical, ScoreRange{0, 1, {0, 1}},
                             {{"rage", 1}, {"fury", 1}, {"calm", 0}, {"tea", 0}});
  std::mt19937_64 rng(17);
  const char* vocab[] = {"rage", "fury", "calm", "tea", "the", "a", "cup", "of"};
  std::vector<std::string> texts;
  std::vector<TokenList> token_lists;
  for (int i = 0; i < 120; ++i) {
    TokenList toks;
    const auto len = 1 + rng() % 9;
    std::string text;
    for (std::size_t j = 0; j < len; ++j) {
      toks.push_back(vocab[rng() % 8]);
      text += toks.back() + " ";
    }
    texts.push_back(text);
    token_lists.push_back(toks);
  }
  const auto c = corpus_of(std::vector<double>(120, 0.0), texts, LabelScheme::integer_range(0, 1));
  for (std::size_t b : {5u, 20u}) {
    for (auto oov : {OovPolicy::drop_na, OovPolicy::zero}) {
      ArcConfig cfg = bin(b);
      cfg.oov = oov;
      cfg.granularity = ScoringGranularity::window_word_pool;
      const auto arc = predicted_arc(c, anger, cfg);
      for (std::size_t w = 0; w < arc.size(); ++w) {
        std::size_t emotion = 0, in_vocab = 0, all = 0;
        for (std::size_t i = w; i < w + b; ++i) {
          for (const auto& t : token_lists[i]) {
            ++all;
            if (t == "rage" || t == "fury") ++emotion;
            if (t == "rage" || t == "fury" || t == "calm" || t == "tea") ++in_vocab;
          }
        }
        const double expected = static_cast<double>(emotion) /
                                static_cast<double>(oov == OovPolicy::drop_na ? in_vocab : all);
        CHECK(arc.values[w] == doctest::Approx(expected).epsilon(1e-15));
      }
    }
  }
}

TEST_CASE("granularities agree with equal token counts and no OOV") {
  std::mt19937_64 rng(23);
  std::map<std::string, double, std::less<>> entries;
  std::vector<std::string> words;
  for (int i = 0; i < 30; ++i) {
    words.push_back("w" + std::string(1, static_cast<char>('a' + i % 26)) + std::string(1 + i / 26, 'q'));
    entries[words.back()] = static_cast<double>(static_cast<int>(rng() % 9) - 4) / 4.0;
  }
  const EmotionLexicon lex("v", Granularity::continuous, ScoreRange{-1, 1, {}}, entries);
  std::vector<std::string> texts;
  for (int i = 0; i < 200; ++i) {
    std::string t;
    for (int j = 0; j < 4; ++j) t += words[rng() % words.size()] + " ";
    texts.push_back(t);
  }
  const auto c = corpus_of(std::vector<double>(200, 0.0), texts, LabelScheme::integer_range(0, 1));
  for (std::size_t b : {1u, 4u, 16u}) {
    ArcConfig a = bin(b);
    ArcConfig p = bin(b);
    p.granularity = ScoringGranularity::window_word_pool;
    const auto ia = predicted_arc(c, lex, a);
    const auto pa = predicted_arc(c, lex, p);
    REQUIRE(ia.size() == pa.size());
    for (std::size_t i = 0; i < ia.size(); ++i) CHECK(ia.values[i] == doctest::Approx(pa.values[i]).epsilon(1e-14));
  }
}

TEST_CASE("standardize") {
  EmotionArc arc;
  arc.values = {1, 2, 3};
  arc.window_starts = {0, 1, 2};
  const auto z = standardize(arc);
  CHECK(z.standardized);
  CHECK(z.values[0] == doctest::Approx(-1.224745).epsilon(1e-6));
  CHECK(z.values[1] == doctest::Approx(0.0));
  CHECK(z.values[2] == doctest::Approx(1.224745).epsilon(1e-6));
  const auto zz = standardize(z);
  for (std::size_t i = 0; i < 3; ++i) CHECK(std::fabs(zz.values[i] - z.values[i]) < 1e-12);

  EmotionArc flat;
  flat.values = {5, 5, 5};
  flat.window_starts = {0, 1, 2};
  CHECK(category_of([&] { standardize(flat); }) == ErrorCategory::degenerate_arc);
  EmotionArc single;
  single.values = {1};
  single.window_starts = {0};
  CHECK(category_of([&] { standardize(single); }) == ErrorCategory::degenerate_arc);
}

TEST_CASE("arc CSV and sidecar round-trip") {
  testing::TempDir dir("arc");
  const auto c = corpus_of({0, 1, 1, 0, 1}, LabelScheme::integer_range(0, 1));
  ArcConfig cfg = bin(2);
  cfg.oov = OovPolicy::zero;
  auto arc = standardize(gold_arc(c, cfg));
  write_arc(arc, dir / "g.csv", R"({"seed": 3})");
  CHECK(std::filesystem::exists(dir / "g.json"));
  const auto back = read_arc(dir / "g.csv");
  CHECK(back.values == arc.values);
  CHECK(back.window_starts == arc.window_starts);
  CHECK(back.standardized);
  CHECK(back.config == arc.config);
  CHECK(back.method == "gold");
  CHECK(testing::read_text(dir / "g.csv").rfind("window_start,score\n", 0) == 0);

  testing::write_text(dir / "bad.csv", "start,value\n0,1\n");
  CHECK(category_of([&] { read_arc(dir / "bad.csv"); }) == ErrorCategory::format);
  CHECK(category_of([&] { read_arc(dir / "missing.csv"); }) == ErrorCategory::io);
}
