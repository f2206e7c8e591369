#pragma once

#include <Eigen/Sparse>
#include <map>
#include <string>
#include <vector>

#include "senlex/corpus.hpp"
#include "senlex/phrase.hpp"

namespace senlex {

struct FeatureCandidate {
  std::string phrase;
  long freq = 0;        // candidate-site count across all subsentences
  double avg_pmi = 0.0; // mean PMI against the discriminator phrases
};

struct FOPair {
  int pair_id = 0;  // dense, assigned in (feature, opinion) lexicographic order
  std::string feature;
  std::string opinion;
  double cor = 0.0;
};

struct PairOccurrence {
  int pair_id = 0;
  std::string review_id;
  int review_index = 0;  // row index into the corpus/document order
  int subsentence = 0;   // subsentence index within the review
  int feature_pos = 0;   // absolute token position of the feature phrase
  int opinion_pos = 0;   // absolute token position of the opinion phrase
  bool negated = false;
};

/// Signed, row-normalized review-pair frequency matrix (m x n). Rows with at
/// least one occurrence satisfy sum_j |A(i,j)| = 1; other rows are zero.
struct ReviewPairMatrix {
  Eigen::SparseMatrix<double> A;
  std::vector<std::string> review_ids;
};

enum class OpinionProfile { AdjOnly, AdjVerb };

/// Corpus-wide phrase frequencies. freq() counts non-overlapping matches of
/// one phrase across all subsentences; cofreq() counts the subsentences in
/// which both phrases occur. Lookups are cached.
class PhraseCounts {
 public:
  explicit PhraseCounts(const std::vector<ReviewDoc>& docs) : docs_(&docs) {}
  long freq(const std::string& phrase) const;
  long cofreq(const std::string& p1, const std::string& p2) const;

 private:
  const std::vector<ReviewDoc>* docs_;
  mutable std::map<std::string, long> freq_cache_;
};

/// Candidate feature phrases: maximal NOUN runs, extended over an immediately
/// preceding ADJ run, counted per generation site. Retained at freq >= threshold.
std::vector<FeatureCandidate> extract_feature_candidates(
    const std::vector<ReviewDoc>& docs, long freq_threshold);

/// PMI(p1,p2) = Freq(p1,p2) / (Freq(p1) * Freq(p2)), co-occurrence counted per
/// subsentence. Throws when either marginal frequency is zero.
double pmi(const std::string& p1, const std::string& p2, const PhraseCounts& counts);

/// Keeps candidates whose mean PMI across the discriminator phrases reaches
/// the threshold; a discriminator that never co-occurs contributes 0.
std::vector<FeatureCandidate> filter_features(
    std::vector<FeatureCandidate> candidates,
    const std::vector<std::string>& discriminators, double pmi_threshold,
    const PhraseCounts& counts);

/// Pairs each feature with the opinion runs (ADJ, plus VERB under AdjVerb)
/// sharing a subsentence with it on disjoint spans, keeping pairs with
/// COR = Freq(f,o)/Freq(f) >= cor_threshold.
std::vector<FOPair> build_pairs(const std::vector<ReviewDoc>& docs,
                                const std::vector<FeatureCandidate>& features,
                                double cor_threshold, OpinionProfile profile);

/// Locates one occurrence per (pair, subsentence) hit; negated when a NEG
/// token lies within the 3 tokens preceding the opinion phrase in that
/// subsentence. Feature/opinion placements never overlap.
std::vector<PairOccurrence> match_occurrences(const std::vector<ReviewDoc>& docs,
                                              const std::vector<FOPair>& pairs);

/// A(i,j) = sign * Freq(i,j) / sum_k Freq(i,k); sign is -1 iff strictly more
/// than half of the (i,j) occurrences are negated.
ReviewPairMatrix build_A(const std::vector<PairOccurrence>& occurrences,
                         const std::vector<ReviewDoc>& docs, int n_pairs);

}  // namespace senlex
