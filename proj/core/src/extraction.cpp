#include "senlex/extraction.hpp"

#include <algorithm>
#include <stdexcept>

namespace senlex {

namespace {

/// Matches a set of phrases against token spans, leftmost-longest and
/// non-overlapping: at each position the longest phrase starting there wins
/// and consumes its tokens.
class PhraseSetIndex {
 public:
  void add(const std::string& phrase, int id) {
    PhraseTokens toks = split_phrase(phrase);
    if (toks.empty()) return;
    auto& bucket = by_first_[toks.front()];
    bucket.push_back({std::move(toks), id});
    std::stable_sort(bucket.begin(), bucket.end(), [](const auto& a, const auto& b) {
      return a.first.size() > b.first.size();
    });
  }

  struct Match {
    int pos;
    int length;
    int id;
  };

  std::vector<Match> match(const std::vector<Token>& tokens, TokenSpan span) const {
    std::vector<Match> out;
    for (int i = span.begin; i < span.end;) {
      auto it = by_first_.find(tokens[i].folded);
      bool advanced = false;
      if (it != by_first_.end()) {
        for (const auto& [phrase, id] : it->second) {
          int len = static_cast<int>(phrase.size());
          if (i + len > span.end) continue;
          bool ok = true;
          for (int k = 1; k < len; ++k) {
            if (tokens[i + k].folded != phrase[static_cast<size_t>(k)]) {
              ok = false;
              break;
            }
          }
          if (ok) {
            out.push_back({i, len, id});
            i += len;
            advanced = true;
            break;
          }
        }
      }
      if (!advanced) ++i;
    }
    return out;
  }

 private:
  std::map<std::string, std::vector<std::pair<PhraseTokens, int>>> by_first_;
};

bool run_tag_matches(PosTag tag, PosTag wanted) { return tag == wanted; }

/// Maximal runs of one tag inside a span, as [begin,end) token positions.
std::vector<TokenSpan> tag_runs(const std::vector<Token>& tokens, TokenSpan span,
                                PosTag tag) {
  std::vector<TokenSpan> runs;
  int i = span.begin;
  while (i < span.end) {
    if (run_tag_matches(tokens[i].pos, tag)) {
      int j = i;
      while (j < span.end && run_tag_matches(tokens[j].pos, tag)) ++j;
      runs.push_back({i, j});
      i = j;
    } else {
      ++i;
    }
  }
  return runs;
}

std::string span_phrase(const std::vector<Token>& tokens, TokenSpan span) {
  std::string out;
  for (int i = span.begin; i < span.end; ++i) {
    if (!out.empty()) out += ' ';
    out += tokens[i].folded;
  }
  return out;
}

bool spans_disjoint(int b1, int e1, int b2, int e2) { return e1 <= b2 || e2 <= b1; }

}  // namespace

long PhraseCounts::freq(const std::string& phrase) const {
  auto it = freq_cache_.find(phrase);
  if (it != freq_cache_.end()) return it->second;
  PhraseTokens toks = split_phrase(phrase);
  long count = 0;
  for (const ReviewDoc& doc : *docs_) {
    for (const TokenSpan& sub : doc.subsentences)
      count += static_cast<long>(find_phrase(doc.tokens, sub, toks).size());
  }
  freq_cache_.emplace(phrase, count);
  return count;
}

long PhraseCounts::cofreq(const std::string& p1, const std::string& p2) const {
  PhraseTokens t1 = split_phrase(p1);
  PhraseTokens t2 = split_phrase(p2);
  long count = 0;
  for (const ReviewDoc& doc : *docs_) {
    for (const TokenSpan& sub : doc.subsentences) {
      if (!find_phrase(doc.tokens, sub, t1).empty() &&
          !find_phrase(doc.tokens, sub, t2).empty())
        ++count;
    }
  }
  return count;
}

std::vector<FeatureCandidate> extract_feature_candidates(
    const std::vector<ReviewDoc>& docs, long freq_threshold) {
  std::map<std::string, long> sites;
  for (const ReviewDoc& doc : docs) {
    for (const TokenSpan& sub : doc.subsentences) {
      for (TokenSpan run : tag_runs(doc.tokens, sub, PosTag::Noun)) {
        // extend over an immediately preceding adjective run
        int b = run.begin;
        while (b > sub.begin && doc.tokens[b - 1].pos == PosTag::Adj) --b;
        ++sites[span_phrase(doc.tokens, {b, run.end})];
      }
    }
  }
  std::vector<FeatureCandidate> out;
  for (const auto& [phrase, count] : sites) {
    if (count >= freq_threshold) out.push_back({phrase, count, 0.0});
  }
  return out;
}

double pmi(const std::string& p1, const std::string& p2, const PhraseCounts& counts) {
  long f1 = counts.freq(p1);
  long f2 = counts.freq(p2);
  if (f1 <= 0 || f2 <= 0)
    throw std::runtime_error("pmi: zero marginal frequency for '" +
                             (f1 <= 0 ? p1 : p2) + "'");
  long f12 = counts.cofreq(p1, p2);
  return static_cast<double>(f12) / (static_cast<double>(f1) * static_cast<double>(f2));
}

std::vector<FeatureCandidate> filter_features(
    std::vector<FeatureCandidate> candidates,
    const std::vector<std::string>& discriminators, double pmi_threshold,
    const PhraseCounts& counts) {
  if (discriminators.empty())
    throw std::runtime_error("filter_features: discriminator list is empty");
  std::vector<FeatureCandidate> out;
  for (FeatureCandidate& cand : candidates) {
    double sum = 0.0;
    for (const std::string& disc : discriminators) {
      if (counts.freq(disc) == 0) continue;  // cannot co-occur, contributes 0
      sum += pmi(cand.phrase, disc, counts);
    }
    cand.avg_pmi = sum / static_cast<double>(discriminators.size());
    if (cand.avg_pmi >= pmi_threshold) out.push_back(std::move(cand));
  }
  return out;
}

std::vector<FOPair> build_pairs(const std::vector<ReviewDoc>& docs,
                                const std::vector<FeatureCandidate>& features,
                                double cor_threshold, OpinionProfile profile) {
  PhraseSetIndex feature_index;
  for (size_t i = 0; i < features.size(); ++i)
    feature_index.add(features[i].phrase, static_cast<int>(i));

  // Freq(f,o): number of subsentences where the feature and an opinion run
  // occur on disjoint spans.
  std::map<std::pair<int, std::string>, long> co;
  for (const ReviewDoc& doc : docs) {
    for (const TokenSpan& sub : doc.subsentences) {
      auto f_hits = feature_index.match(doc.tokens, sub);
      if (f_hits.empty()) continue;
      std::vector<TokenSpan> opinion_runs = tag_runs(doc.tokens, sub, PosTag::Adj);
      if (profile == OpinionProfile::AdjVerb) {
        auto verb_runs = tag_runs(doc.tokens, sub, PosTag::Verb);
        opinion_runs.insert(opinion_runs.end(), verb_runs.begin(), verb_runs.end());
      }
      std::set<std::pair<int, std::string>> seen;  // once per subsentence
      for (const auto& f : f_hits) {
        for (const TokenSpan& o : opinion_runs) {
          if (!spans_disjoint(f.pos, f.pos + f.length, o.begin, o.end)) continue;
          seen.emplace(f.id, span_phrase(doc.tokens, o));
        }
      }
      for (const auto& key : seen) ++co[key];
    }
  }

  PhraseCounts counts(docs);
  std::vector<FOPair> pairs;
  for (const auto& [key, f_o_count] : co) {
    const FeatureCandidate& feature = features[static_cast<size_t>(key.first)];
    long f_count = counts.freq(feature.phrase);
    if (f_count <= 0) continue;
    double cor = static_cast<double>(f_o_count) / static_cast<double>(f_count);
    if (cor >= cor_threshold)
      pairs.push_back({0, feature.phrase, key.second, cor});
  }
  std::sort(pairs.begin(), pairs.end(), [](const FOPair& a, const FOPair& b) {
    return std::tie(a.feature, a.opinion) < std::tie(b.feature, b.opinion);
  });
  for (size_t i = 0; i < pairs.size(); ++i)
    pairs[i].pair_id = static_cast<int>(i);
  return pairs;
}

std::vector<PairOccurrence> match_occurrences(const std::vector<ReviewDoc>& docs,
                                              const std::vector<FOPair>& pairs) {
  // Distinct feature and opinion phrases, matched as sets so that longer
  // phrases win overlapping placements.
  std::map<std::string, int> feature_ids, opinion_ids;
  for (const FOPair& p : pairs) {
    feature_ids.emplace(p.feature, static_cast<int>(feature_ids.size()));
    opinion_ids.emplace(p.opinion, static_cast<int>(opinion_ids.size()));
  }
  PhraseSetIndex feature_index, opinion_index;
  for (const auto& [phrase, id] : feature_ids) feature_index.add(phrase, id);
  for (const auto& [phrase, id] : opinion_ids) opinion_index.add(phrase, id);

  std::vector<PairOccurrence> occurrences;
  for (size_t d = 0; d < docs.size(); ++d) {
    const ReviewDoc& doc = docs[d];
    for (size_t s = 0; s < doc.subsentences.size(); ++s) {
      const TokenSpan& sub = doc.subsentences[s];
      auto f_hits = feature_index.match(doc.tokens, sub);
      if (f_hits.empty()) continue;
      auto o_hits = opinion_index.match(doc.tokens, sub);
      if (o_hits.empty()) continue;
      for (const FOPair& pair : pairs) {
        int fid = feature_ids.at(pair.feature);
        int oid = opinion_ids.at(pair.opinion);
        bool placed = false;
        for (const auto& f : f_hits) {
          if (placed) break;
          if (f.id != fid) continue;
          for (const auto& o : o_hits) {
            if (o.id != oid) continue;
            if (!spans_disjoint(f.pos, f.pos + f.length, o.pos, o.pos + o.length))
              continue;
            PairOccurrence occ;
            occ.pair_id = pair.pair_id;
            occ.review_id = doc.review.review_id;
            occ.review_index = static_cast<int>(d);
            occ.subsentence = static_cast<int>(s);
            occ.feature_pos = f.pos;
            occ.opinion_pos = o.pos;
            occ.negated = negated_before(doc.tokens, sub, o.pos);
            occurrences.push_back(std::move(occ));
            placed = true;  // one occurrence per (pair, subsentence)
            break;
          }
        }
      }
    }
  }
  return occurrences;
}

ReviewPairMatrix build_A(const std::vector<PairOccurrence>& occurrences,
                         const std::vector<ReviewDoc>& docs, int n_pairs) {
  const int m = static_cast<int>(docs.size());
  std::vector<std::map<int, std::pair<long, long>>> rows(
      static_cast<size_t>(m));  // pair -> (count, negated count)
  for (const PairOccurrence& occ : occurrences) {
    auto& [count, negated] = rows[static_cast<size_t>(occ.review_index)][occ.pair_id];
    ++count;
    if (occ.negated) ++negated;
  }

  std::vector<Eigen::Triplet<double>> triplets;
  for (int i = 0; i < m; ++i) {
    long total = 0;
    for (const auto& [pair, counts] : rows[static_cast<size_t>(i)])
      total += counts.first;
    if (total == 0) continue;
    for (const auto& [pair, counts] : rows[static_cast<size_t>(i)]) {
      double value = static_cast<double>(counts.first) / static_cast<double>(total);
      if (2 * counts.second > counts.first) value = -value;
      triplets.emplace_back(i, pair, value);
    }
  }

  ReviewPairMatrix out;
  out.A.resize(m, n_pairs);
  out.A.setFromTriplets(triplets.begin(), triplets.end());
  out.A.makeCompressed();
  out.review_ids.reserve(docs.size());
  for (const ReviewDoc& doc : docs) out.review_ids.push_back(doc.review.review_id);
  return out;
}

}  // namespace senlex
