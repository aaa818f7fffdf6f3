#include "emoarc/synthgen.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "emoarc/error.hpp"
#include "emoarc/rng.hpp"

namespace emoarc {

void SynthSpec::validate() const {
  scheme.validate();
  if (n_instances == 0 || tokens_per_instance == 0 || noise_vocab_size == 0)
    fail(ErrorCategory::invalid_argument, "synthetic spec sizes must be positive");
  if (!(label_signal >= 0.0 && label_signal <= 1.0))
    fail(ErrorCategory::invalid_argument, "label_signal must lie in [0, 1]");
  if (!(label_spread > 0.0)) fail(ErrorCategory::invalid_argument, "label_spread must be positive");
  if (!(drift_amplitude >= 0.0 && drift_amplitude <= 1.0))
    fail(ErrorCategory::invalid_argument, "drift_amplitude must lie in [0, 1]");
  if (scheme.kind == LabelKind::continuous && continuous_levels < 2)
    fail(ErrorCategory::invalid_argument, "continuous_levels must be >= 2");
  const std::size_t classes = scheme.kind == LabelKind::categorical ? scheme.k() : continuous_levels;
  if (classes > 26) fail(ErrorCategory::invalid_argument, "at most 26 classes are supported");
  if (vocab_size < classes)
    fail(ErrorCategory::invalid_argument, "vocab_size " + std::to_string(vocab_size) +
                                              " too small for " + std::to_string(classes) + " classes");
  if (lexicon_noise_entries > noise_vocab_size)
    fail(ErrorCategory::invalid_argument, "lexicon_noise_entries exceeds noise_vocab_size");
  if (lexicon_noise_entries > 0 && !(lexicon_noise_ceiling > 0.0))
    fail(ErrorCategory::invalid_argument, "lexicon_noise_ceiling must be positive");
}

namespace {

std::string letters(std::size_t n) {
  std::string s;
  do {
    s.insert(s.begin(), static_cast<char>('a' + n % 26));
    n /= 26;
  } while (n > 0);
  return s;
}

std::string label_word(std::size_t cls, std::size_t j) {
  return "w" + std::string(1, static_cast<char>('a' + cls)) + letters(j);
}

std::string noise_word(std::size_t j) { return "n" + letters(j); }

}  // namespace

SynthData generate(const SynthSpec& spec) {
  spec.validate();

  std::vector<double> levels;
  if (spec.scheme.kind == LabelKind::categorical) {
    levels = spec.scheme.labels;
  } else {
    for (std::size_t i = 0; i < spec.continuous_levels; ++i) {
      const double t = static_cast<double>(i) / static_cast<double>(spec.continuous_levels - 1);
      levels.push_back(i + 1 == spec.continuous_levels ? spec.scheme.hi
                                                        : spec.scheme.lo + t * (spec.scheme.hi - spec.scheme.lo));
    }
  }
  const std::size_t k = levels.size();

  // Words of class c are label_word(c, 0 .. per_class[c]-1).
  std::vector<std::size_t> per_class(k, spec.vocab_size / k);
  for (std::size_t c = 0; c < spec.vocab_size % k; ++c) ++per_class[c];
  std::vector<std::string> vocabulary;
  std::vector<std::size_t> class_offset(k);
  for (std::size_t c = 0; c < k; ++c) {
    class_offset[c] = vocabulary.size();
    for (std::size_t j = 0; j < per_class[c]; ++j) vocabulary.push_back(label_word(c, j));
  }
  for (std::size_t j = 0; j < spec.noise_vocab_size; ++j) vocabulary.push_back(noise_word(j));

  const double centre = 0.5 * static_cast<double>(k - 1);
  const double two_pi = 2.0 * std::numbers::pi;
  std::vector<Instance> instances(spec.n_instances);
  for (std::size_t i = 0; i < spec.n_instances; ++i) {
    rng::Stream stream(rng::mix(rng::mix(spec.seed, 0x53594E5448ull), i));
    const double phase = two_pi * spec.drift_cycles * static_cast<double>(i) / static_cast<double>(spec.n_instances);
    const double mu = centre * (1.0 + spec.drift_amplitude * std::sin(phase));

    std::vector<double> weights(k);
    double total = 0.0;
    for (std::size_t c = 0; c < k; ++c) {
      const double d = (static_cast<double>(c) - mu) / spec.label_spread;
      weights[c] = std::exp(-0.5 * d * d);
      total += weights[c];
    }
    double u = stream.uniform() * total;
    std::size_t cls = k - 1;
    for (std::size_t c = 0; c < k; ++c) {
      u -= weights[c];
      if (u < 0.0) {
        cls = c;
        break;
      }
    }

    std::string text;
    for (std::size_t t = 0; t < spec.tokens_per_instance; ++t) {
      std::size_t word;
      if (stream.uniform() < spec.label_signal) {
        word = class_offset[cls] + static_cast<std::size_t>(stream.below(per_class[cls]));
      } else {
        word = static_cast<std::size_t>(stream.below(vocabulary.size()));
      }
      if (!text.empty()) text += ' ';
      text += vocabulary[word];
    }
    instances[i] = Instance{"s" + std::to_string(i), std::move(text), levels[cls], std::nullopt};
  }

  std::map<std::string, double, std::less<>> entries;
  for (std::size_t c = 0; c < k; ++c) {
    for (std::size_t j = 0; j < per_class[c]; ++j) entries.emplace(label_word(c, j), levels[c]);
  }
  const double lo = spec.scheme.min_label();
  const double hi = spec.scheme.max_label();
  if (spec.lexicon_noise_entries > 0) {
    rng::Stream stream(rng::mix(spec.seed, 0x4E4F495345ull));
    const double a = std::max(lo, -spec.lexicon_noise_ceiling);
    const double b = std::min(hi, spec.lexicon_noise_ceiling);
    for (std::size_t j = 0; j < spec.lexicon_noise_entries; ++j) {
      entries.emplace(noise_word(j), a + stream.uniform() * (b - a));
    }
  }

  LabelScheme scheme = spec.scheme;
  LabeledCorpus corpus(std::move(instances), std::move(scheme), spec.emotion, OrderPolicy::as_given(),
                       "synth-" + std::to_string(spec.seed));
  EmotionLexicon lexicon(spec.emotion, Granularity::continuous, ScoreRange{lo, hi, {}}, std::move(entries),
                         "synth-" + std::to_string(spec.seed));
  return SynthData{std::move(corpus), std::move(lexicon)};
}

}  // namespace emoarc
