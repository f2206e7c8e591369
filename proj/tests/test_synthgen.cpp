#include <doctest.h>

#include <sstream>

#include "senlex/classifier.hpp"
#include "senlex/synthgen.hpp"
#include "support/tmpdir.hpp"

using namespace senlex;
using senlex::testing::TmpDir;
using senlex::testing::slurp;

TEST_CASE("spec validation") {
  SyntheticSpec spec;
  CHECK_NOTHROW(spec.validate());
  spec.negation_rate = 1.5;
  CHECK_THROWS_AS(spec.validate(), std::runtime_error);
  spec = SyntheticSpec{};
  spec.n_pairs = 1;
  CHECK_THROWS_AS(spec.validate(), std::runtime_error);
  spec = SyntheticSpec{};
  spec.and_rate = 0.7;
  spec.but_rate = 0.7;
  CHECK_THROWS_AS(spec.validate(), std::runtime_error);
}

TEST_CASE("same seed twice produces byte-identical bundles") {
  SyntheticSpec spec;
  spec.n_pairs = 20;
  spec.n_reviews = 60;
  spec.seed = 123;
  TmpDir tmp("synth");
  write_bundle(generate(spec), tmp.path() / "a");
  write_bundle(generate(spec), tmp.path() / "b");
  for (const char* name : {"corpus.jsonl", "gold.tsv", "pool.tsv", "positive.txt",
                           "negative.txt", "annotations.tsv", "synth.cfg"}) {
    CAPTURE(name);
    CHECK(slurp(tmp.path() / "a" / name) == slurp(tmp.path() / "b" / name));
    CHECK(!slurp(tmp.path() / "a" / name).empty());
  }

  SyntheticSpec other = spec;
  other.seed = 124;
  write_bundle(generate(other), tmp.path() / "c");
  CHECK(slurp(tmp.path() / "a" / "corpus.jsonl") !=
        slurp(tmp.path() / "c" / "corpus.jsonl"));
}

TEST_CASE("generated corpus parses cleanly through the corpus module") {
  SyntheticSpec spec;
  spec.n_pairs = 15;
  spec.n_reviews = 40;
  spec.seed = 5;
  TmpDir tmp("synth");
  SyntheticBundle bundle = generate(spec);
  write_bundle(bundle, tmp.path());
  auto reviews = load_corpus(tmp.file("corpus.jsonl"));
  REQUIRE(reviews.size() == 40);
  for (size_t i = 0; i < reviews.size(); ++i) {
    CHECK(reviews[i].review_id == bundle.reviews[i].review_id);
    CHECK(reviews[i].text == bundle.reviews[i].text);
    CHECK(reviews[i].overall_rating >= 1);
    CHECK(reviews[i].overall_rating <= 5);
    REQUIRE(reviews[i].subaspect_ratings.has_value());
  }
}

TEST_CASE("gold is a subset of pool; noise pairs make up the difference") {
  SyntheticSpec spec;
  spec.n_pairs = 30;
  spec.n_reviews = 50;
  SyntheticBundle bundle = generate(spec);
  CHECK(bundle.gold.entries.size() == 30);
  CHECK(bundle.pool.entries.size() == 33);  // ceil(30/10) noise pairs
  for (const auto& [key, label] : bundle.gold.entries) {
    REQUIRE(bundle.pool.entries.count(key) == 1);
    CHECK(bundle.pool.entries.at(key) == label);
  }
}

TEST_CASE("without noise, rating labels equal classifier labels") {
  SyntheticSpec spec;
  spec.n_pairs = 25;
  spec.n_reviews = 120;
  spec.seed = 42;
  spec.noise_rate = 0.0;
  spec.negation_rate = 0.0;
  SyntheticBundle bundle = generate(spec);

  GeneralLexicon lex = default_lexicon();
  lex.classifier_pos_seeds.clear();
  lex.classifier_neg_seeds.clear();
  for (const auto& w : bundle.positive_words) lex.classifier_pos_seeds.insert(w);
  for (const auto& w : bundle.negative_words) lex.classifier_neg_seeds.insert(w);
  RuleTagger tagger(lex);
  for (const Review& r : bundle.reviews) {
    ReviewDoc doc = segment_and_tag(r, tagger);
    Eigen::RowVector2d row = classify_review(doc, lex);
    Polarity by_rating = r.overall_rating >= 4 ? Polarity::Positive
                                               : Polarity::Negative;
    Polarity by_classifier = row(0) == 1.0 ? Polarity::Positive : Polarity::Negative;
    CAPTURE(r.text);
    CHECK(by_rating == by_classifier);
  }
}

TEST_CASE("classifier agrees with planted review polarities") {
  SyntheticSpec spec;  // defaults: negation on, noise on
  spec.n_pairs = 30;
  spec.n_reviews = 150;
  spec.seed = 9;
  SyntheticBundle bundle = generate(spec);
  GeneralLexicon lex = default_lexicon();
  lex.classifier_pos_seeds.clear();
  lex.classifier_neg_seeds.clear();
  for (const auto& w : bundle.positive_words) lex.classifier_pos_seeds.insert(w);
  for (const auto& w : bundle.negative_words) lex.classifier_neg_seeds.insert(w);
  RuleTagger tagger(lex);
  int agree = 0;
  for (size_t i = 0; i < bundle.reviews.size(); ++i) {
    ReviewDoc doc = segment_and_tag(bundle.reviews[i], tagger);
    Eigen::RowVector2d row = classify_review(doc, lex);
    Polarity got = row(0) == 1.0 ? Polarity::Positive : Polarity::Negative;
    if (got == bundle.review_polarities[i]) ++agree;
  }
  CHECK(static_cast<double>(agree) / bundle.reviews.size() >= 0.95);
}
