#pragma once

#include <cstddef>
#include <cstdint>
#include <string>

#include "emoarc/ingest.hpp"
#include "emoarc/lexstore.hpp"

namespace emoarc {

/// Parameters of a synthetic labeled corpus with a companion lexicon.
///
/// Gold labels follow a slow sinusoidal drift so the corpus has an arc
/// shape: at instance i the label distribution centres on
/// (k-1)/2 * (1 + drift_amplitude * sin(2*pi*drift_cycles*i/n)) in class-index
/// units, with Gaussian-shaped spread `label_spread`.
///
/// Each token is, with probability `label_signal`, a word of the instance's
/// own class; otherwise it is drawn uniformly from the whole vocabulary
/// (every class's words plus noise words).
struct SynthSpec {
  std::size_t n_instances = 5000;
  LabelScheme scheme = LabelScheme::integer_range(-3, 3);
  std::size_t vocab_size = 700;        // label words, split evenly over classes
  std::size_t noise_vocab_size = 300;  // words absent from the lexicon
  std::size_t tokens_per_instance = 10;
  double label_signal = 0.3;
  std::uint64_t seed = 42;
  double drift_cycles = 3.0;
  double drift_amplitude = 0.5;
  double label_spread = 1.0;
  /// Noise words that nevertheless get a lexicon entry with a random score of
  /// magnitude below `lexicon_noise_ceiling`; 0 keeps noise words OOV.
  std::size_t lexicon_noise_entries = 0;
  double lexicon_noise_ceiling = 0.0;
  /// Number of levels used as classes for continuous schemes.
  std::size_t continuous_levels = 11;
  std::string emotion = "valence";

  void validate() const;
};

struct SynthData {
  LabeledCorpus corpus;
  EmotionLexicon lexicon;
};

SynthData generate(const SynthSpec& spec);

}  // namespace emoarc
