#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <utility>
#include <vector>

#include "senlex/extraction.hpp"
#include "senlex/seedlex.hpp"

namespace senlex {

using SpMat = Eigen::SparseMatrix<double>;

/// General-lexicon rows: [1,0] / [0,1] / [0,0] by the opinion word's polarity,
/// with the indicator diagonal G marking the nonzero rows.
std::pair<Eigen::MatrixXd, Eigen::VectorXd> build_X0(const std::vector<FOPair>& pairs,
                                                     const GeneralLexicon& lex);

/// Binary symmetric conjunction matrices. W_a(i,j) = 1 when pairs i and j sit
/// in the same sentence, in the same or adjacent subsentences, with an
/// and-word strictly between their opinion phrases, at least min_count times;
/// W_b likewise for but-words. Where both counts reach min_count the larger
/// count keeps its edge (ties go to "and"). Diagonals are zero.
std::pair<SpMat, SpMat> build_conjunction_matrices(
    const std::vector<PairOccurrence>& occurrences,
    const std::vector<ReviewDoc>& docs, const std::vector<FOPair>& pairs,
    int min_count);

/// Sentential similarity: for pairs co-occurring in a review and not already
/// linked by W_a/W_b, the mean over all intra-review co-occurrence
/// combinations of max(0, 1 - dist/length), where dist counts the words
/// strictly between the two feature phrases and length is the review's word
/// count (punctuation excluded).
SpMat build_sentential_similarity(const std::vector<PairOccurrence>& occurrences,
                                  const std::vector<ReviewDoc>& docs,
                                  const std::vector<FOPair>& pairs,
                                  const SpMat& Wa, const SpMat& Wb);

/// Row sums of a similarity matrix.
Eigen::VectorXd degree(const SpMat& W);

/// Everything the objective needs, with dimensions validated and the degree
/// vectors derived on assembly. E is the fixed 2x2 column swap.
struct ConstraintSet {
  SpMat A;                // m x n review-pair matrix
  Eigen::MatrixXd Xtilde; // m x 2 review sentiment rows
  Eigen::MatrixXd X0;     // n x 2 general lexicon rows
  Eigen::VectorXd G;      // n indicator diagonal
  SpMat Wa, Wb, Ws;       // n x n similarity matrices
  Eigen::VectorXd D;      // degree(Wa) + degree(Wb)
  Eigen::VectorXd Ds;     // degree(Ws)
  Eigen::Matrix2d E;

  // Sign splits of the review-fit terms (entries of A may be negative, so
  // A'A and A'Xtilde are mixed-sign). The multiplicative update keeps each
  // part on the side of the ratio where it stays non-negative.
  SpMat AtA_pos, AtA_neg;
  Eigen::MatrixXd AtXt_pos, AtXt_neg;

  static ConstraintSet assemble(SpMat A, Eigen::MatrixXd Xtilde,
                                Eigen::MatrixXd X0, Eigen::VectorXd G,
                                SpMat Wa, SpMat Wb, SpMat Ws);

  int n() const { return static_cast<int>(X0.rows()); }
  int m() const { return static_cast<int>(Xtilde.rows()); }
};

}  // namespace senlex
