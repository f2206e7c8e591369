#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "senlex/corpus.hpp"
#include "senlex/eval.hpp"

namespace senlex {

struct SyntheticSpec {
  int n_pairs = 50;
  int n_reviews = 500;
  std::uint64_t seed = 7;
  double negation_rate = 0.15;
  double and_rate = 0.25;
  double but_rate = 0.10;
  double noise_rate = 0.10;     // fraction of reviews whose star rating
                                // contradicts the expressed text polarity
  double fixed_fraction = 0.40; // fraction of pairs whose opinion word is in
                                // the emitted general word sets
  void validate() const;
};

/// A generated corpus with planted ground truth. The gold lexicon holds the
/// planted pairs; the pool additionally holds the extra "noise" pairs that
/// extraction will find but the gold standard excludes. Reviews are composed
/// of "FEATURE is OPINION" subsentences joined consistently with the planted
/// polarities (and -> same, but -> opposite); negation flips the expressed
/// polarity of a slot.
struct SyntheticBundle {
  std::vector<Review> reviews;
  LabeledLexicon gold;
  LabeledLexicon pool;
  std::vector<std::string> positive_words;  // fixed opinion words
  std::vector<std::string> negative_words;
  std::vector<Polarity> review_polarities;  // planted review-level truth
};

SyntheticBundle generate(const SyntheticSpec& spec);

/// Writes corpus.jsonl, gold.tsv, pool.tsv, positive.txt, negative.txt,
/// annotations.tsv and a ready-to-run synth.cfg into the directory.
void write_bundle(const SyntheticBundle& bundle, const std::filesystem::path& dir);

}  // namespace senlex
