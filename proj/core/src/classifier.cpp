#include "senlex/classifier.hpp"

#include <stdexcept>

#include "senlex/phrase.hpp"

namespace senlex {

PhraseTokens split_phrase(std::string_view phrase) {
  PhraseTokens out;
  std::string word;
  for (char c : phrase) {
    if (c == ' ' || c == '\t') {
      if (!word.empty()) out.push_back(fold_case(word));
      word.clear();
    } else {
      word += c;
    }
  }
  if (!word.empty()) out.push_back(fold_case(word));
  return out;
}

std::string join_phrase(const PhraseTokens& tokens) {
  std::string out;
  for (const auto& t : tokens) {
    if (!out.empty()) out += ' ';
    out += t;
  }
  return out;
}

std::vector<int> find_phrase(const std::vector<Token>& tokens, TokenSpan span,
                             const PhraseTokens& phrase) {
  std::vector<int> hits;
  if (phrase.empty()) return hits;
  int len = static_cast<int>(phrase.size());
  for (int i = span.begin; i + len <= span.end;) {
    bool match = true;
    for (int k = 0; k < len; ++k) {
      if (tokens[i + k].folded != phrase[static_cast<size_t>(k)]) {
        match = false;
        break;
      }
    }
    if (match) {
      hits.push_back(i);
      i += len;  // non-overlapping
    } else {
      ++i;
    }
  }
  return hits;
}

bool negated_before(const std::vector<Token>& tokens, TokenSpan subsentence,
                    int pos, int window) {
  int lo = std::max(subsentence.begin, pos - window);
  for (int i = lo; i < pos; ++i) {
    if (tokens[i].pos == PosTag::Neg) return true;
  }
  return false;
}

Eigen::RowVector2d classify_review(const ReviewDoc& doc, const GeneralLexicon& lex) {
  long score = 0;
  auto tally = [&](const std::set<std::string>& seeds, long vote) {
    for (const std::string& seed : seeds) {
      PhraseTokens phrase = split_phrase(seed);
      for (const TokenSpan& sub : doc.subsentences) {
        for (int hit : find_phrase(doc.tokens, sub, phrase)) {
          score += negated_before(doc.tokens, sub, hit) ? -vote : vote;
        }
      }
    }
  };
  tally(lex.classifier_pos_seeds, +1);
  tally(lex.classifier_neg_seeds, -1);
  return score >= 0 ? Eigen::RowVector2d(1.0, 0.0) : Eigen::RowVector2d(0.0, 1.0);
}

Eigen::RowVector2d SeedClassifier::classify(const ReviewDoc& doc) const {
  return classify_review(doc, *lex_);
}

ReviewSentimentMatrix classify_corpus(const std::vector<ReviewDoc>& docs,
                                      const ReviewClassifier& classifier) {
  ReviewSentimentMatrix out;
  out.rows.resize(static_cast<Eigen::Index>(docs.size()), 2);
  out.review_ids.reserve(docs.size());
  for (size_t i = 0; i < docs.size(); ++i) {
    Eigen::RowVector2d row = classifier.classify(docs[i]);
    bool valid = (row == Eigen::RowVector2d(1.0, 0.0)) ||
                 (row == Eigen::RowVector2d(0.0, 1.0));
    if (!valid)
      throw std::runtime_error("classifier returned a row outside {[1,0],[0,1]}");
    out.rows.row(static_cast<Eigen::Index>(i)) = row;
    out.review_ids.push_back(docs[i].review.review_id);
  }
  return out;
}

ReviewSentimentMatrix classify_corpus(const std::vector<ReviewDoc>& docs,
                                      const GeneralLexicon& lex) {
  SeedClassifier c(lex);
  return classify_corpus(docs, c);
}

}  // namespace senlex
