#include <doctest.h>

#include "senlex/classifier.hpp"
#include "senlex/corpus.hpp"

using namespace senlex;

namespace {

ReviewDoc doc_of(const std::string& text) {
  static const GeneralLexicon lex = default_lexicon();
  static const RuleTagger tagger(lex);
  Review r;
  r.review_id = "r";
  r.overall_rating = 3;
  r.text = text;
  return segment_and_tag(r, tagger);
}

Eigen::RowVector2d classify(const std::string& text) {
  return classify_review(doc_of(text), default_lexicon());
}

const Eigen::RowVector2d kPos(1.0, 0.0);
const Eigen::RowVector2d kNeg(0.0, 1.0);

}  // namespace

TEST_CASE("positive seed hits label positive") {
  CHECK(classify("great and fantastic") == kPos);
}

TEST_CASE("negation flips a seed hit") {
  CHECK(classify("not good") == kNeg);
  CHECK(classify("good") == kPos);
}

TEST_CASE("hand-counted mixed review") {
  // hits: +good +nice, -bad -awful -terrible => score -1
  CHECK(classify("good and nice, bad awful terrible") == kNeg);
}

TEST_CASE("zero hits defaults to positive") {
  CHECK(classify("the weather station runs on coal") == kPos);
  CHECK(classify("") == kPos);
}

TEST_CASE("negation window is 3 tokens within the subsentence") {
  CHECK(classify("not very very good") == kNeg);   // distance 3
  CHECK(classify("not very very very good") == kPos);  // distance 4
  CHECK(classify("not here, good") == kPos);  // comma starts a new subsentence
}

TEST_CASE("appending sentiment-free text never changes a label") {
  const char* bases[] = {"great and fantastic", "not good", "bad service today"};
  for (const char* base : bases) {
    Eigen::RowVector2d before = classify(base);
    CHECK(classify(std::string(base) + ". it was what it was, in the end") == before);
  }
}

TEST_CASE("classification is deterministic") {
  for (int i = 0; i < 5; ++i)
    CHECK(classify("good but noisy, not terrible") ==
          classify("good but noisy, not terrible"));
}

TEST_CASE("classify_corpus stacks rows in order") {
  std::vector<ReviewDoc> docs;
  CHECK(classify_corpus(docs, default_lexicon()).rows.rows() == 0);

  docs.push_back(doc_of("great and fantastic"));
  docs.push_back(doc_of("awful, terrible"));
  ReviewSentimentMatrix m = classify_corpus(docs, default_lexicon());
  REQUIRE(m.rows.rows() == 2);
  CHECK(m.rows.row(0) == kPos);
  CHECK(m.rows.row(1) == kNeg);
  CHECK(m.review_ids.size() == 2);
}

namespace {

struct ConstantClassifier : ReviewClassifier {
  Eigen::RowVector2d row;
  explicit ConstantClassifier(Eigen::RowVector2d r) : row(r) {}
  Eigen::RowVector2d classify(const ReviewDoc&) const override { return row; }
};

}  // namespace

TEST_CASE("classifier plugin substitution and row contract") {
  std::vector<ReviewDoc> docs{doc_of("anything")};
  ConstantClassifier neg(kNeg);
  CHECK(classify_corpus(docs, neg).rows.row(0) == kNeg);

  ConstantClassifier bad(Eigen::RowVector2d(0.5, 0.5));
  CHECK_THROWS_AS(classify_corpus(docs, bad), std::runtime_error);
}
