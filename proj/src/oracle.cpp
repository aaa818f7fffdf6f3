#include "emoarc/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "detail/parallel.hpp"
#include "detail/strings.hpp"
#include "emoarc/arcgen.hpp"
#include "emoarc/error.hpp"
#include "emoarc/evaluate.hpp"
#include "emoarc/rng.hpp"

namespace emoarc {

std::string_view to_string(ErrorModel m) {
  return m == ErrorModel::uniform ? "uniform" : "distance_weighted";
}

ErrorModel parse_error_model(std::string_view s) {
  const auto v = detail::ascii_lower(detail::trim(s));
  if (v == "uniform") return ErrorModel::uniform;
  if (v == "distance_weighted") return ErrorModel::distance_weighted;
  fail(ErrorCategory::invalid_argument, "unknown error model '" + std::string(s) + "'");
}

void OracleConfig::validate() const {
  if (!(accuracy >= 0.0 && accuracy <= 1.0))
    fail(ErrorCategory::invalid_argument, "oracle accuracy must lie in [0, 1]");
  if (trials == 0) fail(ErrorCategory::invalid_argument, "oracle trials must be >= 1");
}

namespace {

void require_categorical(const LabeledCorpus& corpus) {
  const auto& scheme = corpus.scheme();
  if (scheme.kind != LabelKind::categorical)
    fail(ErrorCategory::invalid_argument, "the oracle needs a categorical label scheme");
  if (scheme.k() < 2) fail(ErrorCategory::invalid_argument, "the oracle needs at least 2 labels");
}

std::size_t wrong_label(std::size_t gold, std::size_t k, ErrorModel model, rng::Stream& stream) {
  if (model == ErrorModel::uniform) {
    const auto j = static_cast<std::size_t>(stream.below(k - 1));
    return j < gold ? j : j + 1;
  }
  double total = 0.0;
  for (std::size_t j = 0; j < k; ++j) {
    if (j != gold) total += 1.0 / std::fabs(static_cast<double>(j) - static_cast<double>(gold));
  }
  double u = stream.uniform() * total;
  std::size_t last = gold;
  for (std::size_t j = 0; j < k; ++j) {
    if (j == gold) continue;
    last = j;
    u -= 1.0 / std::fabs(static_cast<double>(j) - static_cast<double>(gold));
    if (u < 0.0) return j;
  }
  return last;
}

}  // namespace

std::vector<double> simulate_labels(const LabeledCorpus& corpus, const OracleConfig& config, std::size_t trial) {
  require_categorical(corpus);
  config.validate();
  const auto& labels = corpus.scheme().labels;
  const std::size_t k = labels.size();
  const std::uint64_t trial_key = rng::mix(config.seed, trial);
  std::vector<double> out;
  out.reserve(corpus.size());
  for (const auto& inst : corpus.instances()) {
    rng::Stream stream(rng::mix(trial_key, rng::fnv1a(inst.id)));
    const double u = stream.uniform();
    if (u < config.accuracy) {
      out.push_back(inst.gold);
      continue;
    }
    const auto gold_index =
        static_cast<std::size_t>(std::lower_bound(labels.begin(), labels.end(), inst.gold) - labels.begin());
    out.push_back(labels[wrong_label(gold_index, k, config.error_model, stream)]);
  }
  return out;
}

std::vector<EvalReport> oracle_curve(const LabeledCorpus& corpus, std::span<const double> accuracies,
                                     std::span<const std::size_t> bins, const OracleConfig& config,
                                     unsigned workers, std::size_t stride) {
  require_categorical(corpus);
  config.validate();
  for (double p : accuracies) {
    OracleConfig c = config;
    c.accuracy = p;
    c.validate();
  }
  if (stride == 0) fail(ErrorCategory::invalid_argument, "stride must be positive");

  const std::size_t n_acc = accuracies.size();
  const std::size_t n_bin = bins.size();
  const std::size_t trials = config.trials;

  std::vector<std::optional<EmotionArc>> gold(n_bin);
  std::vector<std::pair<CellStatus, std::string>> gold_error(n_bin);
  for (std::size_t b = 0; b < n_bin; ++b) {
    ArcConfig cfg;
    cfg.bin_size = bins[b];
    cfg.stride = stride;
    try {
      gold[b] = gold_arc(corpus, cfg);
    } catch (const Error& e) {
      gold_error[b] = {status_for(e.category()), e.what()};
    }
  }

  // rho for every (accuracy, trial, bin), filled in parallel per (accuracy, trial).
  struct Outcome {
    double rho = 0.0;
    CellStatus status = CellStatus::ok;
    std::string message;
  };
  std::vector<Outcome> outcomes(n_acc * trials * n_bin);
  detail::parallel_for(n_acc * trials, workers, [&](std::size_t job) {
    const std::size_t a = job / trials;
    const std::size_t t = job % trials;
    OracleConfig c = config;
    c.accuracy = accuracies[a];
    const auto predicted = simulate_labels(corpus, c, t);
    for (std::size_t b = 0; b < n_bin; ++b) {
      Outcome& o = outcomes[(a * trials + t) * n_bin + b];
      if (!gold[b]) {
        o.status = gold_error[b].first;
        o.message = gold_error[b].second;
        continue;
      }
      try {
        const EmotionArc pred = arc_from_scores(std::span<const double>(predicted), gold[b]->config);
        o.rho = spearman(*gold[b], pred);
      } catch (const Error& e) {
        o.status = status_for(e.category());
        o.message = e.what();
      }
    }
  });

  std::vector<EvalReport> reports;
  reports.reserve(n_acc * n_bin);
  for (std::size_t a = 0; a < n_acc; ++a) {
    for (std::size_t b = 0; b < n_bin; ++b) {
      EvalReport r;
      r.corpus = corpus.name();
      r.emotion = corpus.emotion();
      r.method = "oracle";
      r.accuracy = accuracies[a];
      r.config.bin_size = bins[b];
      r.config.stride = stride;
      r.has_oov = false;
      r.trials = trials;
      r.n_windows = window_count(corpus.size(), bins[b], stride);

      double sum = 0.0;
      double lo = 0.0;
      double hi = 0.0;
      std::size_t failed = 0;
      const Outcome* first_failure = nullptr;
      for (std::size_t t = 0; t < trials; ++t) {
        const Outcome& o = outcomes[(a * trials + t) * n_bin + b];
        if (o.status != CellStatus::ok) {
          ++failed;
          if (!first_failure) first_failure = &o;
          continue;
        }
        if (t - failed == 0) lo = hi = o.rho;
        sum += o.rho;
        lo = std::min(lo, o.rho);
        hi = std::max(hi, o.rho);
      }
      if (first_failure) {
        r.status = first_failure->status;
        r.message = std::to_string(failed) + " of " + std::to_string(trials) +
                    " trials failed: " + first_failure->message;
      } else {
        r.rho = sum / static_cast<double>(trials);
        r.rho_min = lo;
        r.rho_max = hi;
      }
      reports.push_back(std::move(r));
    }
  }
  return reports;
}

}  // namespace emoarc
