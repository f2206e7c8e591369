#include "senlex/eval.hpp"

#include <stdexcept>

namespace senlex {

LabeledLexicon lexicon_from_result(const std::vector<FOPair>& pairs,
                                   const std::vector<Polarity>& labels) {
  if (pairs.size() != labels.size())
    throw std::runtime_error("lexicon_from_result: pair/label count mismatch");
  LabeledLexicon lex;
  for (const FOPair& p : pairs)
    lex.entries[{p.feature, p.opinion}] = labels[static_cast<size_t>(p.pair_id)];
  return lex;
}

EvalReport score_lexicon(const LabeledLexicon& predicted, const LabeledLexicon& pool,
                         const LabeledLexicon& gold) {
  if (gold.entries.empty())
    throw std::runtime_error("score_lexicon: empty gold lexicon");
  EvalReport r;
  r.n_lexicon = static_cast<long>(predicted.entries.size());
  r.n_gold = static_cast<long>(gold.entries.size());
  for (const auto& [key, label] : predicted.entries) {
    auto it = pool.entries.find(key);
    if (it != pool.entries.end() && it->second == label) ++r.n_p_agree;
  }
  for (const auto& [key, label] : gold.entries) {
    auto it = predicted.entries.find(key);
    if (it != predicted.entries.end() && it->second == label) ++r.n_g_agree;
  }
  r.precision = r.n_lexicon > 0
                    ? static_cast<double>(r.n_p_agree) / static_cast<double>(r.n_lexicon)
                    : 0.0;
  r.recall = static_cast<double>(r.n_g_agree) / static_cast<double>(r.n_gold);
  double pr = r.precision + r.recall;
  r.f_measure = pr > 0.0 ? 2.0 * r.precision * r.recall / pr : 0.0;
  return r;
}

LabelMethod label_method_from_string(const std::string& name) {
  if (name == "overall") return LabelMethod::Overall;
  if (name == "normalized") return LabelMethod::Normalized;
  if (name == "subaspect") return LabelMethod::Subaspect;
  if (name == "classify") return LabelMethod::Classify;
  throw std::runtime_error("unknown labelling method: '" + name + "'");
}

std::vector<Polarity> label_reviews_by_method(const std::vector<Review>& reviews,
                                              const std::vector<ReviewDoc>& docs,
                                              LabelMethod method,
                                              const GeneralLexicon& lex) {
  std::vector<Polarity> labels;
  labels.reserve(reviews.size());
  switch (method) {
    case LabelMethod::Overall:
      for (const Review& r : reviews)
        labels.push_back(r.overall_rating >= 4 ? Polarity::Positive
                                               : Polarity::Negative);
      break;
    case LabelMethod::Normalized: {
      std::map<std::string, std::pair<double, long>> user_sums;
      for (const Review& r : reviews) {
        auto& [sum, count] = user_sums[r.user_id];
        sum += r.overall_rating;
        ++count;
      }
      for (const Review& r : reviews) {
        const auto& [sum, count] = user_sums.at(r.user_id);
        double normalized = r.overall_rating - sum / static_cast<double>(count);
        labels.push_back(normalized >= 0.0 ? Polarity::Positive : Polarity::Negative);
      }
      break;
    }
    case LabelMethod::Subaspect:
      for (const Review& r : reviews) {
        if (!r.subaspect_ratings)
          throw std::runtime_error("subaspect labelling: review '" + r.review_id +
                                   "' has no sub-aspect ratings");
        const auto& s = *r.subaspect_ratings;
        double mean = (s[0] + s[1] + s[2]) / 3.0;
        labels.push_back(mean >= 4.0 ? Polarity::Positive : Polarity::Negative);
      }
      break;
    case LabelMethod::Classify: {
      if (docs.size() != reviews.size())
        throw std::runtime_error("classify labelling: docs/reviews count mismatch");
      for (const ReviewDoc& doc : docs) {
        Eigen::RowVector2d row = classify_review(doc, lex);
        labels.push_back(row(0) == 1.0 ? Polarity::Positive : Polarity::Negative);
      }
      break;
    }
  }
  return labels;
}

LabellingPrecision labelling_precision(const std::vector<std::string>& review_ids,
                                       const std::vector<Polarity>& predicted,
                                       const std::map<std::string, Polarity>& annotations) {
  if (review_ids.size() != predicted.size())
    throw std::runtime_error("labelling_precision: id/label count mismatch");
  std::map<std::string, Polarity> by_id;
  for (size_t i = 0; i < review_ids.size(); ++i)
    by_id[review_ids[i]] = predicted[i];

  long pos_pred = 0, pos_hit = 0, neg_pred = 0, neg_hit = 0, correct = 0;
  for (const auto& [id, annotated] : annotations) {
    auto it = by_id.find(id);
    if (it == by_id.end())
      throw std::runtime_error("labelling_precision: unknown review id '" + id + "'");
    Polarity p = it->second;
    if (p == Polarity::Positive) {
      ++pos_pred;
      if (annotated == Polarity::Positive) ++pos_hit;
    } else {
      ++neg_pred;
      if (annotated == Polarity::Negative) ++neg_hit;
    }
    if (p == annotated) ++correct;
  }
  LabellingPrecision out;
  out.n_annotated = static_cast<long>(annotations.size());
  if (out.n_annotated == 0)
    throw std::runtime_error("labelling_precision: no annotations");
  out.pos_precision =
      pos_pred > 0 ? static_cast<double>(pos_hit) / static_cast<double>(pos_pred) : 0.0;
  out.neg_precision =
      neg_pred > 0 ? static_cast<double>(neg_hit) / static_cast<double>(neg_pred) : 0.0;
  out.overall = static_cast<double>(correct) / static_cast<double>(out.n_annotated);
  return out;
}

namespace {

EvalReport run_and_score(const ConstraintSet& C, const std::vector<FOPair>& pairs,
                         const LabeledLexicon& pool, const LabeledLexicon& gold,
                         const HyperParams& params) {
  SolveResult res = solve(C, params);
  return score_lexicon(lexicon_from_result(pairs, res.labels), pool, gold);
}

}  // namespace

std::vector<KnockoutRow> knockout_run(const ConstraintSet& C,
                                      const std::vector<FOPair>& pairs,
                                      const LabeledLexicon& pool,
                                      const LabeledLexicon& gold,
                                      const HyperParams& base) {
  std::vector<KnockoutRow> rows;
  rows.push_back({"default", base, run_and_score(C, pairs, pool, gold, base)});
  const char* names[4] = {"lambda1=0", "lambda2=0", "lambda3=0", "lambda4=0"};
  for (int k = 0; k < 4; ++k) {
    HyperParams p = base;
    (k == 0 ? p.lambda1 : k == 1 ? p.lambda2 : k == 2 ? p.lambda3 : p.lambda4) = 0.0;
    rows.push_back({names[k], p, run_and_score(C, pairs, pool, gold, p)});
  }
  return rows;
}

std::vector<SweepRow> parameter_sweep(const ConstraintSet& C,
                                      const std::vector<FOPair>& pairs,
                                      const LabeledLexicon& pool,
                                      const LabeledLexicon& gold,
                                      const HyperParams& base,
                                      const std::array<std::vector<double>, 4>& grid) {
  std::array<std::vector<double>, 4> values = grid;
  const double base_values[4] = {base.lambda1, base.lambda2, base.lambda3,
                                 base.lambda4};
  for (int k = 0; k < 4; ++k) {
    if (values[static_cast<size_t>(k)].empty())
      values[static_cast<size_t>(k)].push_back(base_values[k]);
  }
  std::vector<SweepRow> rows;
  for (double l1 : values[0]) {
    for (double l2 : values[1]) {
      for (double l3 : values[2]) {
        for (double l4 : values[3]) {
          HyperParams p = base;
          p.lambda1 = l1;
          p.lambda2 = l2;
          p.lambda3 = l3;
          p.lambda4 = l4;
          rows.push_back({{l1, l2, l3, l4}, run_and_score(C, pairs, pool, gold, p)});
        }
      }
    }
  }
  return rows;
}

}  // namespace senlex
