#include "emoarc/evaluate.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "detail/parallel.hpp"
#include "emoarc/error.hpp"

namespace emoarc {

std::vector<double> average_ranks(std::span<const double> values) {
  const std::size_t n = values.size();
  for (double v : values) {
    if (std::isnan(v)) fail(ErrorCategory::invalid_argument, "cannot rank NaN");
  }
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
  std::vector<double> ranks(n);
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i + 1;
    while (j < n && values[order[j]] == values[order[i]]) ++j;
    // positions i..j-1 hold ranks i+1..j
    const double rank = 0.5 * static_cast<double>(i + 1 + j);
    for (std::size_t k = i; k < j; ++k) ranks[order[k]] = rank;
    i = j;
  }
  return ranks;
}

double spearman(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size())
    fail(ErrorCategory::invalid_argument, "series lengths differ (" + std::to_string(a.size()) + " vs " +
                                              std::to_string(b.size()) + ")");
  const std::size_t n = a.size();
  if (n < 2) fail(ErrorCategory::degenerate_arc, "spearman needs at least 2 values");
  const auto ra = average_ranks(a);
  const auto rb = average_ranks(b);
  // Mean rank is (n+1)/2 whatever the ties.
  const double mean = 0.5 * static_cast<double>(n + 1);
  double sab = 0.0, saa = 0.0, sbb = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double da = ra[i] - mean;
    const double db = rb[i] - mean;
    sab += da * db;
    saa += da * da;
    sbb += db * db;
  }
  if (saa == 0.0 || sbb == 0.0) fail(ErrorCategory::degenerate_arc, "spearman undefined for a constant series");
  const double rho = sab / std::sqrt(saa * sbb);
  return std::clamp(rho, -1.0, 1.0);
}

double spearman(const EmotionArc& a, const EmotionArc& b) {
  if (a.window_starts != b.window_starts) {
    if (a.size() != b.size())
      fail(ErrorCategory::invalid_argument, "arc lengths differ (" + std::to_string(a.size()) + " vs " +
                                                std::to_string(b.size()) + ")");
    fail(ErrorCategory::invalid_argument, "arc window starts are not aligned");
  }
  return spearman(std::span<const double>(a.values), std::span<const double>(b.values));
}

EvalReport evaluate_pair(const EmotionArc& gold, const EmotionArc& pred) {
  EvalReport r;
  r.corpus = !pred.corpus.empty() ? pred.corpus : gold.corpus;
  r.method = pred.method.empty() ? "pair" : pred.method;
  r.lexicon = pred.lexicon;
  r.config = pred.config;
  r.n_windows = pred.size();
  r.gold_standardized = gold.standardized;
  r.pred_standardized = pred.standardized;
  r.rho = spearman(gold, pred);
  return r;
}

void SweepGrid::validate() const {
  if (bin_sizes.empty() || oov_policies.empty() || thresholds.empty() || granularities.empty())
    fail(ErrorCategory::invalid_argument, "sweep grid lists must be nonempty");
  if (stride == 0) fail(ErrorCategory::invalid_argument, "stride must be positive");
  for (auto b : bin_sizes) {
    if (b == 0) fail(ErrorCategory::invalid_argument, "bin sizes must be positive");
  }
}

namespace {

void mark_failed(EvalReport& r, const Error& e) {
  r.status = status_for(e.category());
  r.message = e.what();
  r.rho = std::numeric_limits<double>::quiet_NaN();
}

std::vector<EvalReport> sweep_lexo(const LabeledCorpus& corpus, const SweepGrid& grid, const LexoMethod& method,
                                   unsigned workers) {
  const auto tokens = tokenize_corpus(corpus);

  // Gold arcs depend only on the bin size.
  std::map<std::size_t, std::optional<EmotionArc>> gold;
  std::map<std::size_t, std::string> gold_error;
  std::map<std::size_t, CellStatus> gold_status;
  for (auto b : grid.bin_sizes) {
    if (gold.count(b)) continue;
    ArcConfig cfg;
    cfg.bin_size = b;
    cfg.stride = grid.stride;
    try {
      gold[b] = gold_arc(corpus, cfg);
    } catch (const Error& e) {
      gold[b] = std::nullopt;
      gold_error[b] = e.what();
      gold_status[b] = status_for(e.category());
    }
  }

  struct Prepared {
    std::optional<std::vector<InstanceTally>> tallies;
    std::optional<ThresholdSpec> threshold;  // mode resolved
    std::size_t entries = 0;
    CellStatus status = CellStatus::ok;
    std::string error;
  };
  const std::size_t n_lex = method.lexicons.size();
  const std::size_t n_thr = grid.thresholds.size();
  std::vector<Prepared> prepared(n_lex * n_thr);
  detail::parallel_for(prepared.size(), workers, [&](std::size_t idx) {
    const auto& lex = method.lexicons[idx / n_thr];
    const auto& thr = grid.thresholds[idx % n_thr];
    Prepared& p = prepared[idx];
    try {
      if (thr) {
        const auto filtered = threshold_lexicon(lex, *thr);
        p.threshold = ThresholdSpec{thr->tau, resolve_mode(lex, thr->mode)};
        p.entries = filtered.size();
        p.tallies = tally_instances(tokens, filtered);
      } else {
        p.entries = lex.size();
        p.tallies = tally_instances(tokens, lex);
      }
    } catch (const Error& e) {
      if (thr) p.threshold = ThresholdSpec{thr->tau, thr->mode};
      p.status = status_for(e.category());
      p.error = e.what();
    }
  });

  const std::size_t n_gran = grid.granularities.size();
  const std::size_t n_oov = grid.oov_policies.size();
  const std::size_t n_bin = grid.bin_sizes.size();
  std::vector<EvalReport> reports(n_lex * n_thr * n_gran * n_oov * n_bin);
  detail::parallel_for(reports.size(), workers, [&](std::size_t idx) {
    std::size_t rest = idx;
    const std::size_t bi = rest % n_bin; rest /= n_bin;
    const std::size_t oi = rest % n_oov; rest /= n_oov;
    const std::size_t gi = rest % n_gran; rest /= n_gran;
    const std::size_t prep_idx = rest;  // lexicon * n_thr + threshold
    const auto& lex = method.lexicons[prep_idx / n_thr];
    const Prepared& p = prepared[prep_idx];

    EvalReport& r = reports[idx];
    r.corpus = corpus.name();
    r.emotion = !corpus.emotion().empty() ? corpus.emotion() : lex.emotion();
    r.method = "lexo";
    r.lexicon = lex.id();
    r.config.bin_size = grid.bin_sizes[bi];
    r.config.stride = grid.stride;
    r.config.oov = grid.oov_policies[oi];
    r.config.granularity = grid.granularities[gi];
    r.config.threshold = p.threshold;
    if (p.tallies) r.lexicon_entries = p.entries;

    if (!p.tallies) {
      r.status = p.status;
      r.message = p.error;
      return;
    }
    const auto& g = gold.at(r.config.bin_size);
    if (!g) {
      r.status = gold_status.at(r.config.bin_size);
      r.message = gold_error.at(r.config.bin_size);
      return;
    }
    try {
      const EmotionArc pred = arc_from_tallies(*p.tallies, r.config);
      r.n_windows = pred.size();
      r.rho = spearman(*g, pred);
    } catch (const Error& e) {
      mark_failed(r, e);
    }
  });
  return reports;
}

}  // namespace

std::vector<EvalReport> sweep(const LabeledCorpus& corpus, const SweepGrid& grid, const SweepMethod& method,
                              unsigned workers) {
  grid.validate();
  if (const auto* lexo = std::get_if<LexoMethod>(&method)) {
    if (lexo->lexicons.empty()) fail(ErrorCategory::invalid_argument, "sweep needs at least one lexicon");
    return sweep_lexo(corpus, grid, *lexo, workers);
  }
  const auto& oracle = std::get<OracleMethod>(method);
  if (oracle.accuracies.empty()) fail(ErrorCategory::invalid_argument, "sweep needs at least one accuracy");
  return oracle_curve(corpus, oracle.accuracies, grid.bin_sizes, oracle.config, workers, grid.stride);
}

}  // namespace emoarc
