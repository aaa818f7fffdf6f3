#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "emoarc/arcgen.hpp"
#include "emoarc/error.hpp"
#include "emoarc/evaluate.hpp"
#include "emoarc/report.hpp"
#include "emoarc/synthgen.hpp"
#include "oracles/reference.hpp"

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

EmotionArc arc_of(std::vector<double> v) {
  EmotionArc a;
  a.values = std::move(v);
  for (std::size_t i = 0; i < a.values.size(); ++i) a.window_starts.push_back(i);
  return a;
}

SynthData small_synth(double signal = 0.3, std::uint64_t seed = 42) {
  SynthSpec s;
  s.n_instances = 1500;
  s.label_signal = signal;
  s.seed = seed;
  return generate(s);
}

}  // namespace

TEST_CASE("the two reference formulas agree") {
  const std::vector<double> a{1, 2, 2, 4}, b{1, 3, 2, 4};
  CHECK(ref::spearman_ranks(a, b) == doctest::Approx(ref::spearman_tie_corrected(a, b)).epsilon(1e-14));
}

TEST_CASE("spearman examples") {
  const std::vector<double> a{1, 2, 2, 4}, b{1, 3, 2, 4};
  const double expected = ref::spearman_ranks(a, b);
  CHECK(std::fabs(spearman(a, b) - expected) < 1e-12);
  // ranks a: 1, 2.5, 2.5, 4; b: 1, 3, 2, 4 -> 0.9486832980505138
  CHECK(spearman(a, b) == doctest::Approx(0.9486832980505138).epsilon(1e-12));

  const std::vector<double> inc{0.1, 0.5, 0.7, 2.0, 3.5};
  std::vector<double> rev(inc.rbegin(), inc.rend());
  CHECK(spearman(inc, inc) == 1.0);
  CHECK(spearman(inc, rev) == -1.0);
}

TEST_CASE("spearman errors") {
  const std::vector<double> a{1, 2, 3}, b{1, 2}, flat{2, 2, 2}, one{1};
  CHECK(category_of([&] { spearman(a, b); }) == ErrorCategory::invalid_argument);
  CHECK(category_of([&] { spearman(a, flat); }) == ErrorCategory::degenerate_arc);
  CHECK(category_of([&] { spearman(one, one); }) == ErrorCategory::degenerate_arc);
  auto x = arc_of({1, 2, 3});
  auto y = arc_of({3, 1, 2});
  y.window_starts = {0, 2, 4};
  CHECK(category_of([&] { spearman(x, y); }) == ErrorCategory::invalid_argument);
}

TEST_CASE("average ranks") {
  CHECK(average_ranks(std::vector<double>{3, 1, 3, 2}) == std::vector<double>{3.5, 1, 3.5, 2});
  CHECK(average_ranks(std::vector<double>{5, 5, 5}) == std::vector<double>{2, 2, 2});
}

TEST_CASE("spearman invariance under increasing transforms") {
  std::mt19937_64 rng(31);
  std::normal_distribution<double> g;
  for (int t = 0; t < 200; ++t) {
    const std::size_t n = 3 + rng() % 60;
    std::vector<double> a(n), b(n);
    for (auto& v : a) v = std::round(g(rng) * 3.0);
    for (auto& v : b) v = g(rng);
    if (std::all_of(a.begin(), a.end(), [&](double v) { return v == a[0]; })) continue;
    const auto ea = arc_of(a), eb = arc_of(b);
    const double rho = spearman(ea, eb);
    CHECK(std::fabs(rho) <= 1.0);
    const auto za = standardize(ea), zb = standardize(eb);
    CHECK(average_ranks(za.values) == average_ranks(a));
    CHECK(spearman(za, zb) == rho);
    CHECK(spearman(za, eb) == rho);
    std::vector<double> affine(n);
    for (std::size_t i = 0; i < n; ++i) affine[i] = 2.5 * b[i] + 7.0;
    CHECK(spearman(a, affine) == rho);
    std::vector<double> cubed(n);
    for (std::size_t i = 0; i < n; ++i) cubed[i] = b[i] * b[i] * b[i];
    CHECK(spearman(a, cubed) == rho);
    std::vector<double> neg(n);
    for (std::size_t i = 0; i < n; ++i) neg[i] = -b[i];
    CHECK(spearman(b, neg) == -1.0);
  }
}

TEST_CASE("evaluate_pair") {
  const auto data = small_synth(1.0);
  for (std::size_t b : {1u, 10u, 50u}) {
    ArcConfig cfg;
    cfg.bin_size = b;
    const auto gold = gold_arc(data.corpus, cfg);
    CHECK(evaluate_pair(gold, gold).rho == 1.0);
    const auto r = evaluate_pair(gold, predicted_arc(data.corpus, data.lexicon, cfg));
    CHECK(r.rho == 1.0);
    CHECK(r.n_windows == gold.size());
  }
  SynthSpec spec;  // the A5 fixture at its pinned seed
  const auto noisy = generate(spec);
  ArcConfig b1, b300;
  b300.bin_size = 300;
  const double low = evaluate_pair(gold_arc(noisy.corpus, b1), predicted_arc(noisy.corpus, noisy.lexicon, b1)).rho;
  const double high =
      evaluate_pair(gold_arc(noisy.corpus, b300), predicted_arc(noisy.corpus, noisy.lexicon, b300)).rho;
  CHECK(high > low);
}

TEST_CASE("sweep cardinality and order") {
  const auto data = small_synth();
  const auto reports = sweep(data.corpus, SweepGrid{}, LexoMethod{{data.lexicon}});
  REQUIRE(reports.size() == 12);
  const std::size_t bins[] = {1, 10, 50, 100, 200, 300};
  for (std::size_t i = 0; i < 12; ++i) {
    CHECK(reports[i].config.oov == (i < 6 ? OovPolicy::drop_na : OovPolicy::zero));
    CHECK(reports[i].config.bin_size == bins[i % 6]);
    CHECK(reports[i].ok());
    CHECK(reports[i].method == "lexo");
  }

  SweepGrid grid;
  grid.thresholds = {std::nullopt, ThresholdSpec{0.5, ThresholdMode::automatic}, ThresholdSpec{1.0, ThresholdMode::automatic}};
  grid.granularities = {ScoringGranularity::instance_mean, ScoringGranularity::window_word_pool};
  const auto second = generate(SynthSpec{.n_instances = 1500, .seed = 7});
  const auto big = sweep(data.corpus, grid, LexoMethod{{data.lexicon, second.lexicon}});
  CHECK(big.size() == 2 * 3 * 2 * 2 * 6);
}

TEST_CASE("sweep captures failing cells") {
  const auto data = small_synth();
  SweepGrid grid;
  grid.bin_sizes = {1, 1500, 2000};
  grid.thresholds = {ThresholdSpec{3.0, ThresholdMode::magnitude}, ThresholdSpec{9.0, ThresholdMode::magnitude}};
  const auto reports = sweep(data.corpus, grid, LexoMethod{{data.lexicon}});
  REQUIRE(reports.size() == 12);
  // tau = 3 keeps only the extreme classes: some single-instance windows miss them all.
  CHECK(reports[0].status == CellStatus::empty_window);
  CHECK(reports[1].status == CellStatus::degenerate_arc);  // b = N: a single window
  CHECK(reports[2].status == CellStatus::invalid_config);  // b > N
  CHECK(reports[3].status == CellStatus::ok);              // zero policy at b = 1
  for (std::size_t i = 6; i < 12; ++i) CHECK(reports[i].status == CellStatus::invalid_config);
  for (const auto& r : reports) {
    if (!r.ok()) {
      CHECK(std::isnan(r.rho));
      CHECK_FALSE(r.message.empty());
    }
  }
}

TEST_CASE("sweep is identical at any worker count") {
  const auto data = small_synth();
  SweepGrid grid;
  grid.thresholds = {std::nullopt, ThresholdSpec{1.0, ThresholdMode::automatic}};
  const auto one = serialize_reports_csv(sweep(data.corpus, grid, LexoMethod{{data.lexicon}}, 1));
  for (unsigned w : {2u, 3u, 8u}) CHECK(serialize_reports_csv(sweep(data.corpus, grid, LexoMethod{{data.lexicon}}, w)) == one);
}

TEST_CASE("sweep validates its grid") {
  const auto data = small_synth();
  SweepGrid grid;
  grid.bin_sizes.clear();
  CHECK(category_of([&] { sweep(data.corpus, grid, LexoMethod{{data.lexicon}}); }) == ErrorCategory::invalid_argument);
  CHECK(category_of([&] { sweep(data.corpus, SweepGrid{}, LexoMethod{}); }) == ErrorCategory::invalid_argument);
}
