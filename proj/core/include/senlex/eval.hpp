#pragma once

#include <array>
#include <map>
#include <string>
#include <vector>

#include "senlex/classifier.hpp"
#include "senlex/constraints.hpp"
#include "senlex/solver.hpp"

namespace senlex {

struct LabeledLexicon {
  std::map<std::pair<std::string, std::string>, Polarity> entries;
};

LabeledLexicon lexicon_from_result(const std::vector<FOPair>& pairs,
                                   const std::vector<Polarity>& labels);

struct EvalReport {
  double precision = 0.0;
  double recall = 0.0;
  double f_measure = 0.0;
  long n_lexicon = 0;
  long n_gold = 0;
  long n_p_agree = 0;
  long n_g_agree = 0;
};

/// precision = N_p_agree / N_lexicon against the pool lexicon,
/// recall = N_g_agree / N_gold against the golden standard,
/// F = 2pr/(p+r) (0 when p + r = 0). Agreement means the same key is present
/// with the same label. Throws on an empty gold lexicon.
EvalReport score_lexicon(const LabeledLexicon& predicted, const LabeledLexicon& pool,
                         const LabeledLexicon& gold);

enum class LabelMethod { Overall, Normalized, Subaspect, Classify };

LabelMethod label_method_from_string(const std::string& name);

/// Review-level orientation labelling:
///   Overall:    positive iff the overall star rating is >= 4
///   Normalized: positive iff rating - (user's mean rating) >= 0
///   Subaspect:  positive iff the mean of the three sub-aspect ratings >= 4
///   Classify:   the bundled review classifier
/// Subaspect throws when any review lacks sub-aspect ratings.
std::vector<Polarity> label_reviews_by_method(const std::vector<Review>& reviews,
                                              const std::vector<ReviewDoc>& docs,
                                              LabelMethod method,
                                              const GeneralLexicon& lex);

struct LabellingPrecision {
  double pos_precision = 0.0;  // annotated positive among predicted positive
  double neg_precision = 0.0;
  double overall = 0.0;        // accuracy over the annotated reviews
  long n_annotated = 0;
};

/// Compares predicted review labels with an annotation map. Every annotated
/// review id must be present among the predictions.
LabellingPrecision labelling_precision(const std::vector<std::string>& review_ids,
                                       const std::vector<Polarity>& predicted,
                                       const std::map<std::string, Polarity>& annotations);

struct KnockoutRow {
  std::string name;  // "default" or the zeroed lambda
  HyperParams params;
  EvalReport report;
};

/// Runs solve five times: the base parameters, then each lambda zeroed in
/// turn, scoring each lexicon against pool and gold.
std::vector<KnockoutRow> knockout_run(const ConstraintSet& C,
                                      const std::vector<FOPair>& pairs,
                                      const LabeledLexicon& pool,
                                      const LabeledLexicon& gold,
                                      const HyperParams& base);

struct SweepRow {
  std::array<double, 4> lambdas{};
  EvalReport report;
};

/// Cartesian sweep over per-lambda value lists (empty lists fall back to the
/// base value), one solve per tuple.
std::vector<SweepRow> parameter_sweep(const ConstraintSet& C,
                                      const std::vector<FOPair>& pairs,
                                      const LabeledLexicon& pool,
                                      const LabeledLexicon& gold,
                                      const HyperParams& base,
                                      const std::array<std::vector<double>, 4>& grid);

}  // namespace senlex
