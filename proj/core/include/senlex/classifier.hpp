#pragma once

#include <Eigen/Dense>
#include <vector>

#include "senlex/corpus.hpp"
#include "senlex/seedlex.hpp"

namespace senlex {

/// Review-level sentiment matrix: one row per review, each exactly [1,0]
/// (positive) or [0,1] (negative), aligned with review_ids.
struct ReviewSentimentMatrix {
  Eigen::MatrixXd rows;  // m x 2
  std::vector<std::string> review_ids;
};

/// Review-level classification plugin. Any implementation returning rows in
/// {[1,0],[0,1]} is substitutable downstream.
class ReviewClassifier {
 public:
  virtual ~ReviewClassifier() = default;
  virtual Eigen::RowVector2d classify(const ReviewDoc& doc) const = 0;
};

/// Bundled unsupervised classifier: aggregates seed opinion word hits,
/// +1 for positive seeds and -1 for negative ones, flipping the sign when a
/// negation token occurs within the 3 tokens preceding the hit inside the
/// same subsentence. Ties (including zero hits) label positive.
class SeedClassifier : public ReviewClassifier {
 public:
  explicit SeedClassifier(const GeneralLexicon& lex) : lex_(&lex) {}
  Eigen::RowVector2d classify(const ReviewDoc& doc) const override;

 private:
  const GeneralLexicon* lex_;
};

Eigen::RowVector2d classify_review(const ReviewDoc& doc, const GeneralLexicon& lex);

ReviewSentimentMatrix classify_corpus(const std::vector<ReviewDoc>& docs,
                                      const ReviewClassifier& classifier);
ReviewSentimentMatrix classify_corpus(const std::vector<ReviewDoc>& docs,
                                      const GeneralLexicon& lex);

}  // namespace senlex
