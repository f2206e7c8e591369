#include "senlex/constraints.hpp"

#include <algorithm>
#include <stdexcept>

namespace senlex {

namespace {

int phrase_len(const std::string& phrase) {
  return static_cast<int>(split_phrase(phrase).size());
}

SpMat from_triplets(int n, const std::vector<Eigen::Triplet<double>>& t) {
  SpMat m(n, n);
  m.setFromTriplets(t.begin(), t.end());
  m.makeCompressed();
  return m;
}

}  // namespace

std::pair<Eigen::MatrixXd, Eigen::VectorXd> build_X0(const std::vector<FOPair>& pairs,
                                                     const GeneralLexicon& lex) {
  const int n = static_cast<int>(pairs.size());
  Eigen::MatrixXd X0 = Eigen::MatrixXd::Zero(n, 2);
  Eigen::VectorXd G = Eigen::VectorXd::Zero(n);
  for (const FOPair& p : pairs) {
    switch (polarity_of(p.opinion, lex)) {
      case Polarity::Positive:
        X0(p.pair_id, 0) = 1.0;
        G(p.pair_id) = 1.0;
        break;
      case Polarity::Negative:
        X0(p.pair_id, 1) = 1.0;
        G(p.pair_id) = 1.0;
        break;
      default:
        break;
    }
  }
  return {X0, G};
}

std::pair<SpMat, SpMat> build_conjunction_matrices(
    const std::vector<PairOccurrence>& occurrences,
    const std::vector<ReviewDoc>& docs, const std::vector<FOPair>& pairs,
    int min_count) {
  const int n = static_cast<int>(pairs.size());
  std::vector<int> opinion_lens(pairs.size());
  for (const FOPair& p : pairs)
    opinion_lens[static_cast<size_t>(p.pair_id)] = phrase_len(p.opinion);

  // Group occurrences by (review, sentence); a subsentence index maps to the
  // sentence whose span contains its tokens.
  struct Occ {
    int pair_id;
    int subsentence;
    int opinion_begin;
    int opinion_end;
  };
  std::map<std::pair<int, int>, std::vector<Occ>> by_sentence;
  for (const PairOccurrence& occ : occurrences) {
    const ReviewDoc& doc = docs[static_cast<size_t>(occ.review_index)];
    int sentence = -1;
    for (size_t s = 0; s < doc.sentences.size(); ++s) {
      if (occ.opinion_pos >= doc.sentences[s].begin &&
          occ.opinion_pos < doc.sentences[s].end) {
        sentence = static_cast<int>(s);
        break;
      }
    }
    if (sentence < 0) continue;
    int olen = opinion_lens[static_cast<size_t>(occ.pair_id)];
    by_sentence[{occ.review_index, sentence}].push_back(
        {occ.pair_id, occ.subsentence, occ.opinion_pos, occ.opinion_pos + olen});
  }

  std::map<std::pair<int, int>, long> and_counts, but_counts;
  for (const auto& [key, occs] : by_sentence) {
    const ReviewDoc& doc = docs[static_cast<size_t>(key.first)];
    for (size_t a = 0; a < occs.size(); ++a) {
      for (size_t b = a + 1; b < occs.size(); ++b) {
        const Occ& first = occs[a].opinion_begin <= occs[b].opinion_begin ? occs[a] : occs[b];
        const Occ& second = occs[a].opinion_begin <= occs[b].opinion_begin ? occs[b] : occs[a];
        if (first.pair_id == second.pair_id) continue;
        if (std::abs(first.subsentence - second.subsentence) > 1) continue;
        bool has_and = false, has_but = false;
        for (int t = first.opinion_end; t < second.opinion_begin; ++t) {
          if (doc.tokens[static_cast<size_t>(t)].pos == PosTag::ConjAnd) has_and = true;
          if (doc.tokens[static_cast<size_t>(t)].pos == PosTag::ConjBut) has_but = true;
        }
        std::pair<int, int> edge = {std::min(first.pair_id, second.pair_id),
                                    std::max(first.pair_id, second.pair_id)};
        // a but-word between the opinions overrides an and-word in the same gap
        if (has_but)
          ++but_counts[edge];
        else if (has_and)
          ++and_counts[edge];
      }
    }
  }

  std::vector<Eigen::Triplet<double>> ta, tb;
  std::set<std::pair<int, int>> edges;
  for (const auto& [edge, c] : and_counts) edges.insert(edge);
  for (const auto& [edge, c] : but_counts) edges.insert(edge);
  for (const auto& edge : edges) {
    long ca = and_counts.count(edge) ? and_counts.at(edge) : 0;
    long cb = but_counts.count(edge) ? but_counts.at(edge) : 0;
    bool a_ok = ca >= min_count;
    bool b_ok = cb >= min_count;
    if (a_ok && b_ok) {  // larger count wins; ties go to "and"
      if (ca >= cb) b_ok = false;
      else a_ok = false;
    }
    if (a_ok) {
      ta.emplace_back(edge.first, edge.second, 1.0);
      ta.emplace_back(edge.second, edge.first, 1.0);
    } else if (b_ok) {
      tb.emplace_back(edge.first, edge.second, 1.0);
      tb.emplace_back(edge.second, edge.first, 1.0);
    }
  }
  return {from_triplets(n, ta), from_triplets(n, tb)};
}

SpMat build_sentential_similarity(const std::vector<PairOccurrence>& occurrences,
                                  const std::vector<ReviewDoc>& docs,
                                  const std::vector<FOPair>& pairs,
                                  const SpMat& Wa, const SpMat& Wb) {
  const int n = static_cast<int>(pairs.size());
  std::vector<int> feature_lens(pairs.size());
  for (const FOPair& p : pairs)
    feature_lens[static_cast<size_t>(p.pair_id)] = phrase_len(p.feature);

  std::map<int, std::vector<const PairOccurrence*>> by_review;
  for (const PairOccurrence& occ : occurrences)
    by_review[occ.review_index].push_back(&occ);

  std::map<std::pair<int, int>, std::pair<double, long>> acc;  // sum, count
  for (const auto& [review, occs] : by_review) {
    const ReviewDoc& doc = docs[static_cast<size_t>(review)];
    if (doc.word_length <= 0) continue;
    for (size_t a = 0; a < occs.size(); ++a) {
      for (size_t b = a + 1; b < occs.size(); ++b) {
        const PairOccurrence* oi = occs[a];
        const PairOccurrence* oj = occs[b];
        if (oi->pair_id == oj->pair_id) continue;
        int fi_begin = oi->feature_pos;
        int fi_end = fi_begin + feature_lens[static_cast<size_t>(oi->pair_id)];
        int fj_begin = oj->feature_pos;
        int fj_end = fj_begin + feature_lens[static_cast<size_t>(oj->pair_id)];
        int gap_begin = std::min(fi_end, fj_end);
        int gap_end = std::max(fi_begin, fj_begin);
        int dist = 0;
        for (int t = gap_begin; t < gap_end; ++t) {
          if (doc.tokens[static_cast<size_t>(t)].pos != PosTag::Punct) ++dist;
        }
        double contribution =
            std::max(0.0, 1.0 - static_cast<double>(dist) /
                                    static_cast<double>(doc.word_length));
        auto key = std::make_pair(std::min(oi->pair_id, oj->pair_id),
                                  std::max(oi->pair_id, oj->pair_id));
        acc[key].first += contribution;
        acc[key].second += 1;
      }
    }
  }

  std::vector<Eigen::Triplet<double>> ts;
  for (const auto& [edge, sum_count] : acc) {
    if (Wa.coeff(edge.first, edge.second) != 0.0) continue;
    if (Wb.coeff(edge.first, edge.second) != 0.0) continue;
    double mean = sum_count.first / static_cast<double>(sum_count.second);
    if (mean == 0.0) continue;
    ts.emplace_back(edge.first, edge.second, mean);
    ts.emplace_back(edge.second, edge.first, mean);
  }
  return from_triplets(n, ts);
}

Eigen::VectorXd degree(const SpMat& W) {
  Eigen::VectorXd d = Eigen::VectorXd::Zero(W.rows());
  for (int k = 0; k < W.outerSize(); ++k) {
    for (SpMat::InnerIterator it(W, k); it; ++it) d(it.row()) += it.value();
  }
  return d;
}

ConstraintSet ConstraintSet::assemble(SpMat A, Eigen::MatrixXd Xtilde,
                                      Eigen::MatrixXd X0, Eigen::VectorXd G,
                                      SpMat Wa, SpMat Wb, SpMat Ws) {
  const Eigen::Index n = X0.rows();
  const Eigen::Index m = Xtilde.rows();
  if (A.rows() != m || A.cols() != n)
    throw std::runtime_error("constraint set: A dimensions disagree with Xtilde/X0");
  if (Xtilde.cols() != 2 || X0.cols() != 2)
    throw std::runtime_error("constraint set: sentiment matrices must have 2 columns");
  if (G.size() != n)
    throw std::runtime_error("constraint set: G size disagrees with pair count");
  for (const SpMat* W : {&Wa, &Wb, &Ws}) {
    if (W->rows() != n || W->cols() != n)
      throw std::runtime_error("constraint set: similarity matrix dimension mismatch");
  }

  ConstraintSet cs;
  cs.A = std::move(A);
  cs.Xtilde = std::move(Xtilde);
  cs.X0 = std::move(X0);
  cs.G = std::move(G);
  cs.Wa = std::move(Wa);
  cs.Wb = std::move(Wb);
  cs.Ws = std::move(Ws);
  cs.D = degree(cs.Wa) + degree(cs.Wb);
  cs.Ds = degree(cs.Ws);
  cs.E << 0.0, 1.0, 1.0, 0.0;

  SpMat AtA = (cs.A.transpose() * cs.A).pruned();
  std::vector<Eigen::Triplet<double>> pos, neg;
  for (int k = 0; k < AtA.outerSize(); ++k) {
    for (SpMat::InnerIterator it(AtA, k); it; ++it) {
      if (it.value() > 0.0)
        pos.emplace_back(static_cast<int>(it.row()), static_cast<int>(it.col()),
                         it.value());
      else if (it.value() < 0.0)
        neg.emplace_back(static_cast<int>(it.row()), static_cast<int>(it.col()),
                         -it.value());
    }
  }
  cs.AtA_pos = from_triplets(static_cast<int>(n), pos);
  cs.AtA_neg = from_triplets(static_cast<int>(n), neg);
  Eigen::MatrixXd AtXt = cs.A.transpose() * cs.Xtilde;
  cs.AtXt_pos = AtXt.cwiseMax(0.0);
  cs.AtXt_neg = (-AtXt).cwiseMax(0.0);
  return cs;
}

}  // namespace senlex
