#include <doctest.h>

#include <algorithm>
#include <random>

#include "emoarc/arcgen.hpp"
#include "emoarc/error.hpp"
#include "emoarc/evaluate.hpp"
#include "emoarc/ingest.hpp"
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

std::vector<std::string> ids(const LabeledCorpus& c) {
  std::vector<std::string> out;
  for (const auto& i : c.instances()) out.push_back(i.id);
  return out;
}

const LabelScheme three = LabelScheme::integer_range(-1, 1);

}  // namespace

TEST_CASE("load a 4-row TSV") {
  const auto c = load_corpus(testing::data("three_class.tsv"), {}, three);
  CHECK(c.size() == 4);
  CHECK(c.gold() == std::vector<double>{-1, 0, 1, 1});
  CHECK(c.name() == "three_class");
  CHECK(c.instances()[0].id == "0");
}

TEST_CASE("seeded shuffle is deterministic") {
  ColumnMapping m;
  m.id_column = "id";
  const auto a = load_corpus(testing::data("three_class.tsv"), m, three, OrderPolicy::shuffled(7));
  const auto b = load_corpus(testing::data("three_class.tsv"), m, three, OrderPolicy::shuffled(7));
  CHECK(ids(a) == ids(b));
  auto sorted = ids(a);
  std::sort(sorted.begin(), sorted.end());
  CHECK(sorted == std::vector<std::string>{"a", "b", "c", "d"});
}

TEST_CASE("seven-class scheme has chance accuracy 1/7") {
  ColumnMapping m;
  m.text_column = "Tweet";
  m.label_column = "Intensity Class";
  m.id_column = "ID";
  const auto c = load_corpus(testing::data("voc7.tsv"), m, LabelScheme::integer_range(-3, 3), {}, "valence");
  CHECK(c.scheme().k() == 7);
  CHECK(c.scheme().chance_accuracy() == doctest::Approx(1.0 / 7.0));
  CHECK(c.size() == 28);
  CHECK(c.emotion() == "valence");
}

TEST_CASE("CSV with quoted fields") {
  ColumnMapping m;
  m.id_column = "id";
  const auto c = load_corpus(testing::data("quoted.csv"), m, LabelScheme::integer_range(0, 1));
  REQUIRE(c.size() == 3);
  CHECK(c.instances()[0].text == "hello, world");
  CHECK(c.instances()[1].text == "she said \"no\"");
  CHECK(c.gold() == std::vector<double>{1, 0, 1});
}

TEST_CASE("JSONL with the same mapping") {
  ColumnMapping m;
  m.id_column = "id";
  const auto c = load_corpus(testing::data("lines.jsonl"), m, LabelScheme::integer_range(0, 2));
  CHECK(ids(c) == std::vector<std::string>{"x1", "x2", "x3"});
  CHECK(c.gold() == std::vector<double>{2, 0, 1});
}

TEST_CASE("timestamp ordering") {
  ColumnMapping m;
  m.id_column = "id";
  m.timestamp_column = "ts";
  const auto c = load_corpus(testing::data("timestamps.tsv"), m, LabelScheme::integer_range(0, 1),
                             OrderPolicy::by_timestamp());
  CHECK(ids(c) == std::vector<std::string>{"early", "mid", "late"});
  ColumnMapping no_ts;
  CHECK(category_of([&] {
          load_corpus(testing::data("timestamps.tsv"), no_ts, LabelScheme::integer_range(0, 1),
                      OrderPolicy::by_timestamp());
        }) == ErrorCategory::invalid_argument);
}

TEST_CASE("label map") {
  ColumnMapping m;
  m.label_map = {{"neg", -1}, {"neu", 0}, {"pos", 1}};
  const auto c = parse_corpus("text\tlabel\nx\tpos\ny\tneg\nz\t0\n", CorpusFormat::tsv, m, three);
  CHECK(c.gold() == std::vector<double>{1, -1, 0});
}

TEST_CASE("malformed rows abort the load") {
  const ColumnMapping m;
  CHECK(category_of([&] { parse_corpus("text\tlabel\nx\t1\ny\n", CorpusFormat::tsv, m, three); }) ==
        ErrorCategory::format);
  CHECK(category_of([&] { parse_corpus("text\tlabel\nx\tmaybe\n", CorpusFormat::tsv, m, three); }) ==
        ErrorCategory::format);
  CHECK(category_of([&] { parse_corpus("words\tlabel\nx\t1\n", CorpusFormat::tsv, m, three); }) ==
        ErrorCategory::format);
  CHECK(category_of([&] { parse_corpus("text\tlabel\nx\t5\n", CorpusFormat::tsv, m, three); }) ==
        ErrorCategory::format);
  CHECK(category_of([&] { load_corpus("/nonexistent/c.tsv", m, three); }) == ErrorCategory::io);
}

TEST_CASE("duplicate ids are rejected") {
  ColumnMapping m;
  m.id_column = "id";
  CHECK(category_of([&] { parse_corpus("id\ttext\tlabel\na\tx\t1\na\ty\t0\n", CorpusFormat::tsv, m, three); }) ==
        ErrorCategory::format);
}

TEST_CASE("relabel_to_unit examples") {
  std::vector<Instance> inst;
  for (int g = -3; g <= 3; ++g) inst.push_back({std::to_string(g + 3), "w", static_cast<double>(g), {}});
  const LabeledCorpus c(inst, LabelScheme::integer_range(-3, 3), "valence");
  const auto u = relabel_to_unit(c);
  for (std::size_t i = 0; i < 7; ++i) CHECK(u.gold()[i] == doctest::Approx(static_cast<double>(i) / 6.0));
  CHECK(u.gold().front() == 0.0);
  CHECK(u.gold().back() == 1.0);

  const LabeledCorpus bin({{"a", "w", 0, {}}, {"b", "w", 1, {}}}, LabelScheme::integer_range(0, 1), "x");
  CHECK(relabel_to_unit(bin).gold() == std::vector<double>{0, 1});
}

TEST_CASE("relabel_to_unit preserves window-mean ranks") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 20 + rng() % 200;
    std::vector<Instance> inst;
    for (std::size_t i = 0; i < n; ++i)
      inst.push_back({std::to_string(i), "w", static_cast<double>(static_cast<int>(rng() % 7) - 3), {}});
    const LabeledCorpus c(inst, LabelScheme::integer_range(-3, 3), "v");
    const auto u = relabel_to_unit(c);
    for (std::size_t b : {1u, 3u, 10u}) {
      ArcConfig cfg;
      cfg.bin_size = b;
      const auto ga = gold_arc(c, cfg);
      const auto gb = gold_arc(u, cfg);
      CHECK(average_ranks(ga.values) == average_ranks(gb.values));
      if (std::adjacent_find(ga.values.begin(), ga.values.end(), std::not_equal_to<>()) != ga.values.end())
        CHECK(spearman(ga, gb) == 1.0);
    }
  }
}

TEST_CASE("TSV round-trip") {
  testing::TempDir dir("corpus");
  std::vector<Instance> inst{{"a", "héllo wörld", 1, 10.5}, {"b", "second", -1, 20}};
  const LabeledCorpus c(inst, three, "valence");
  save_corpus_tsv(c, dir / "c.tsv");
  ColumnMapping m;
  m.id_column = "id";
  m.timestamp_column = "timestamp";
  const auto back = load_corpus(dir / "c.tsv", m, three);
  REQUIRE(back.size() == 2);
  CHECK(ids(back) == ids(c));
  CHECK(back.gold() == c.gold());
  CHECK(back.instances()[0].text == "héllo wörld");
  CHECK(back.instances()[0].timestamp == 10.5);
}
