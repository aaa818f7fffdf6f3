#include <doctest.h>

#include <cmath>
#include <set>

#include "emoarc/arcgen.hpp"
#include "emoarc/error.hpp"
#include "emoarc/evaluate.hpp"
#include "emoarc/ingest.hpp"
#include "emoarc/lexstore.hpp"
#include "emoarc/synthgen.hpp"
#include "support.hpp"

using namespace emoarc;

TEST_CASE("generation is deterministic") {
  SynthSpec s;
  s.n_instances = 800;
  const auto a = generate(s);
  const auto b = generate(s);
  CHECK(serialize_corpus_tsv(a.corpus) == serialize_corpus_tsv(b.corpus));
  CHECK(serialize_lexicon(a.lexicon) == serialize_lexicon(b.lexicon));
  s.seed = 43;
  CHECK(serialize_corpus_tsv(generate(s).corpus) != serialize_corpus_tsv(a.corpus));
}

TEST_CASE("perfect signal recovers every gold label") {
  for (auto scheme : {LabelScheme::integer_range(-3, 3), LabelScheme::integer_range(0, 1),
                      LabelScheme::categorical({0, 0.5, 1})}) {
    SynthSpec s;
    s.n_instances = 1000;
    s.scheme = scheme;
    s.label_signal = 1.0;
    const auto d = generate(s);
    const auto tokens = tokenize_corpus(d.corpus);
    for (std::size_t i = 0; i < d.corpus.size(); ++i) {
      for (auto oov : {OovPolicy::drop_na, OovPolicy::zero}) {
        CHECK(score_instance(tokens[i], d.lexicon, oov) == d.corpus.instances()[i].gold);
      }
    }
  }
}

TEST_CASE("continuous schemes are quantized onto levels") {
  SynthSpec s;
  s.n_instances = 500;
  s.scheme = LabelScheme::continuous(0, 1);
  s.continuous_levels = 5;
  s.label_signal = 1.0;
  const auto d = generate(s);
  std::set<double> seen;
  for (double g : d.corpus.gold()) seen.insert(g);
  CHECK(seen.size() <= 5);
  for (double g : seen) CHECK(std::fabs(g * 4 - std::round(g * 4)) < 1e-12);
  ArcConfig cfg;
  cfg.bin_size = 20;
  CHECK(spearman(gold_arc(d.corpus, cfg), predicted_arc(d.corpus, d.lexicon, cfg)) == 1.0);
}

TEST_CASE("no signal gives no correlation on average") {
  double total = 0;
  const int seeds = 50;
  for (int k = 0; k < seeds; ++k) {
    SynthSpec s;
    s.label_signal = 0.0;
    s.seed = 1000 + static_cast<std::uint64_t>(k);
    const auto d = generate(s);
    ArcConfig cfg;
    cfg.bin_size = 100;
    total += spearman(gold_arc(d.corpus, cfg), predicted_arc(d.corpus, d.lexicon, cfg));
  }
  CHECK(std::fabs(total / seeds) < 0.05);
}

TEST_CASE("noise words are absent from the lexicon") {
  SynthSpec s;
  s.n_instances = 300;
  const auto d = generate(s);
  std::size_t oov = 0;
  for (const auto& toks : tokenize_corpus(d.corpus)) {
    for (const auto& t : toks) oov += !d.lexicon.lookup(t).has_value();
  }
  CHECK(oov > 0);
  CHECK(d.lexicon.size() == s.vocab_size);
}

TEST_CASE("lexicon noise entries stay inside the ceiling") {
  SynthSpec s;
  s.n_instances = 300;
  s.scheme = LabelScheme::integer_range(0, 3);
  s.lexicon_noise_entries = 100;
  s.lexicon_noise_ceiling = 0.9;
  const auto d = generate(s);
  CHECK(d.lexicon.size() == s.vocab_size + 100);
  std::size_t noise = 0;
  for (const auto& [term, score] : d.lexicon.entries()) {
    if (term[0] == 'n') {
      ++noise;
      CHECK(score >= 0.0);
      CHECK(score <= 0.9);
    }
  }
  CHECK(noise == 100);
}

TEST_CASE("outputs round-trip through the file formats") {
  testing::TempDir dir("synth");
  SynthSpec s;
  s.n_instances = 600;
  s.lexicon_noise_entries = 50;
  s.lexicon_noise_ceiling = 1.0;
  const auto d = generate(s);
  save_corpus_tsv(d.corpus, dir / "c.tsv");
  save_lexicon(d.lexicon, dir / "l.tsv");
  ColumnMapping m;
  m.id_column = "id";
  const auto c = load_corpus(dir / "c.tsv", m, s.scheme);
  const auto l = load_lexicon(dir / "l.tsv", {});
  CHECK(c.gold() == d.corpus.gold());
  CHECK(serialize_corpus_tsv(c) == serialize_corpus_tsv(d.corpus));
  CHECK(l.entries() == d.lexicon.entries());
  CHECK(l.range() == d.lexicon.range());
  ArcConfig cfg;
  cfg.bin_size = 50;
  CHECK(predicted_arc(c, l, cfg).values == predicted_arc(d.corpus, d.lexicon, cfg).values);
}

TEST_CASE("spec validation") {
  SynthSpec s;
  s.vocab_size = 3;
  CHECK_THROWS_AS(generate(s), Error);
  s = SynthSpec{};
  s.label_signal = 1.5;
  CHECK_THROWS_AS(generate(s), Error);
  s = SynthSpec{};
  s.n_instances = 0;
  CHECK_THROWS_AS(generate(s), Error);
}
