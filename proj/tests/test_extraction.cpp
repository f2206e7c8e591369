#include <doctest.h>

#include <map>
#include <random>

#include "senlex/extraction.hpp"
#include "support/oracles.hpp"

using namespace senlex;

namespace {

std::vector<ReviewDoc> docs_of(const std::vector<std::string>& texts) {
  static const GeneralLexicon lex = default_lexicon();
  static const RuleTagger tagger(lex);
  std::vector<ReviewDoc> docs;
  for (size_t i = 0; i < texts.size(); ++i) {
    Review r;
    r.review_id = "r" + std::to_string(i);
    r.overall_rating = 3;
    r.text = texts[i];
    docs.push_back(segment_and_tag(r, tagger));
  }
  return docs;
}

// fixture corpus used by several oracles below
const std::vector<std::string>& fixture_texts() {
  static const std::vector<std::string> texts = {
      "Phone quality is perfect and the service is excellent.",
      "the service is excellent, phone quality is not perfect",
      "sound effect is clear. the service is awful, phone quality is great",
      "battery life is short but the screen is bright",
      "of phone quality, the phone quality is perfect again",
  };
  return texts;
}

// Brute-force phrase frequency: scan every subsentence for non-overlapping
// matches of the folded token sequence.
long brute_freq(const std::vector<ReviewDoc>& docs, const std::string& phrase) {
  PhraseTokens toks = split_phrase(phrase);
  long count = 0;
  for (const ReviewDoc& doc : docs) {
    for (const TokenSpan& sub : doc.subsentences) {
      int i = sub.begin;
      while (i + static_cast<int>(toks.size()) <= sub.end) {
        bool ok = true;
        for (size_t k = 0; k < toks.size(); ++k) {
          if (doc.tokens[static_cast<size_t>(i) + k].folded != toks[k]) ok = false;
        }
        if (ok) {
          ++count;
          i += static_cast<int>(toks.size());
        } else {
          ++i;
        }
      }
    }
  }
  return count;
}

long brute_cofreq(const std::vector<ReviewDoc>& docs, const std::string& a,
                  const std::string& b) {
  long count = 0;
  for (const ReviewDoc& doc : docs) {
    for (const TokenSpan& sub : doc.subsentences) {
      std::vector<ReviewDoc> one{ReviewDoc{doc.review, doc.tokens, {}, {sub}, 0}};
      if (brute_freq(one, a) > 0 && brute_freq(one, b) > 0) ++count;
    }
  }
  return count;
}

}  // namespace

TEST_CASE("feature candidates from the running example") {
  auto docs = docs_of({"Phone quality is perfect and the service is excellent."});
  auto cands = extract_feature_candidates(docs, 1);
  std::set<std::string> phrases;
  for (const auto& c : cands) phrases.insert(c.phrase);
  CHECK(phrases.count("phone quality") == 1);
  CHECK(phrases.count("service") == 1);
}

TEST_CASE("frequency threshold boundary drops below-threshold candidates") {
  std::vector<std::string> texts(9, "the screen is bright");
  auto docs = docs_of(texts);
  CHECK(extract_feature_candidates(docs, 10).empty());
  auto kept = extract_feature_candidates(docs, 9);
  REQUIRE(kept.size() == 1);
  CHECK(kept[0].phrase == "screen");
  CHECK(kept[0].freq == 9);
}

TEST_CASE("candidate set equals hand enumeration on the fixture corpus") {
  auto docs = docs_of(fixture_texts());
  auto cands = extract_feature_candidates(docs, 1);
  std::map<std::string, long> got;
  for (const auto& c : cands) got[c.phrase] = c.freq;

  // hand-enumerated maximal ADJ*NOUN+ runs per subsentence
  std::map<std::string, long> expected = {
      {"phone quality", 5}, {"service", 3}, {"sound effect", 1},
      {"battery life", 1},  {"screen", 1},
  };
  CHECK(got == expected);
}

TEST_CASE("pmi direct formula and zero numerator") {
  auto docs = docs_of(fixture_texts());
  PhraseCounts counts(docs);
  // "service" and "battery life" never share a subsentence
  CHECK(pmi("service", "battery life", counts) == doctest::Approx(0.0));
  CHECK_THROWS_AS(pmi("service", "warp drive", counts), std::runtime_error);

  // Freq(p1)=10, Freq(p2)=5, Freq(p1,p2)=2 -> 0.04 on a crafted corpus
  std::vector<std::string> crafted;
  crafted.push_back("alpha beta, alpha beta");          // 2 co-occurring subsentences
  for (int i = 0; i < 8; ++i) crafted.push_back("alpha");
  for (int i = 0; i < 3; ++i) crafted.push_back("beta");
  auto crafted_docs = docs_of(crafted);
  PhraseCounts crafted_counts(crafted_docs);
  REQUIRE(crafted_counts.freq("alpha") == 10);
  REQUIRE(crafted_counts.freq("beta") == 5);
  CHECK(pmi("alpha", "beta", crafted_counts) == doctest::Approx(0.04).epsilon(1e-12));
}

TEST_CASE("pmi equals the brute-force subsentence scan and is symmetric") {
  auto docs = docs_of(fixture_texts());
  PhraseCounts counts(docs);
  const char* phrases[] = {"phone quality", "service", "perfect", "excellent",
                           "phone"};
  for (const char* a : phrases) {
    for (const char* b : phrases) {
      if (std::string(a) == b) continue;
      double expected = static_cast<double>(brute_cofreq(docs, a, b)) /
                        (static_cast<double>(brute_freq(docs, a)) *
                         static_cast<double>(brute_freq(docs, b)));
      CHECK(pmi(a, b, counts) == doctest::Approx(expected).epsilon(1e-12));
      CHECK(pmi(a, b, counts) == pmi(b, a, counts));
    }
  }
}

TEST_CASE("filter_features thresholds on mean discriminator pmi") {
  auto docs = docs_of(fixture_texts());
  PhraseCounts counts(docs);
  auto cands = extract_feature_candidates(docs, 1);

  auto all = filter_features(cands, {"of phone"}, 0.0, counts);
  CHECK(all.size() == cands.size());  // threshold 0 keeps everything

  auto some = filter_features(cands, {"of phone"}, 1e-9, counts);
  std::set<std::string> kept;
  for (const auto& c : some) kept.insert(c.phrase);
  // only "phone quality" shares a subsentence with "of phone"
  CHECK(kept == std::set<std::string>{"phone quality"});

  CHECK_THROWS_AS(filter_features(cands, {}, 0.0, counts), std::runtime_error);

  // a discriminator absent from the corpus contributes zero
  auto none = filter_features(cands, {"zeppelin motor"}, 1e-9, counts);
  CHECK(none.empty());
}

TEST_CASE("build_pairs forms the example pair and applies the cor threshold") {
  auto docs = docs_of(fixture_texts());
  auto features = extract_feature_candidates(docs, 1);
  auto pairs = build_pairs(docs, features, 0.0, OpinionProfile::AdjOnly);
  std::map<std::pair<std::string, std::string>, double> cor;
  for (const auto& p : pairs) cor[{p.feature, p.opinion}] = p.cor;
  REQUIRE(cor.count({"phone quality", "perfect"}) == 1);
  REQUIRE(cor.count({"service", "excellent"}) == 1);
  // Freq(service)=3, co-occurrences with "excellent"=2
  CHECK(cor[{"service", "excellent"}] == doctest::Approx(2.0 / 3.0));

  auto strict = build_pairs(docs, features, 0.7, OpinionProfile::AdjOnly);
  for (const auto& p : strict)
    CHECK(p.cor >= 0.7);
}

TEST_CASE("cor formula on a crafted corpus: 5/50 kept at 0.05") {
  std::vector<std::string> crafted;
  for (int i = 0; i < 5; ++i) crafted.push_back("the screen is bright");
  for (int i = 0; i < 45; ++i) crafted.push_back("the screen works");
  auto docs = docs_of(crafted);
  auto features = extract_feature_candidates(docs, 1);
  auto pairs = build_pairs(docs, features, 0.05, OpinionProfile::AdjOnly);
  REQUIRE(pairs.size() == 1);
  CHECK(pairs[0].feature == "screen");
  CHECK(pairs[0].opinion == "bright");
  CHECK(pairs[0].cor == doctest::Approx(0.1));
  CHECK(build_pairs(docs, features, 0.11, OpinionProfile::AdjOnly).empty());
}

TEST_CASE("verb runs become opinions only under the adj_verb profile") {
  auto docs = docs_of({"the screen works", "the screen works"});
  auto features = extract_feature_candidates(docs, 1);
  CHECK(build_pairs(docs, features, 0.0, OpinionProfile::AdjOnly).empty());
  auto pairs = build_pairs(docs, features, 0.0, OpinionProfile::AdjVerb);
  REQUIRE(pairs.size() == 1);
  CHECK(pairs[0].opinion == "works");
}

TEST_CASE("pair ids are dense, lexicographic and rebuild identically") {
  auto docs = docs_of(fixture_texts());
  auto features = extract_feature_candidates(docs, 1);
  auto pairs = build_pairs(docs, features, 0.0, OpinionProfile::AdjOnly);
  for (size_t i = 0; i < pairs.size(); ++i) {
    CHECK(pairs[i].pair_id == static_cast<int>(i));
    if (i > 0)
      CHECK(std::tie(pairs[i - 1].feature, pairs[i - 1].opinion) <
            std::tie(pairs[i].feature, pairs[i].opinion));
  }
  auto again = build_pairs(docs, features, 0.0, OpinionProfile::AdjOnly);
  REQUIRE(again.size() == pairs.size());
  for (size_t i = 0; i < pairs.size(); ++i) {
    CHECK(again[i].pair_id == pairs[i].pair_id);
    CHECK(again[i].feature == pairs[i].feature);
    CHECK(again[i].opinion == pairs[i].opinion);
  }
}

TEST_CASE("pair set equals the brute-force pairing oracle") {
  auto docs = docs_of(fixture_texts());
  auto features = extract_feature_candidates(docs, 1);
  auto pairs = build_pairs(docs, features, 0.0, OpinionProfile::AdjOnly);
  std::set<std::pair<std::string, std::string>> got;
  for (const auto& p : pairs) got.emplace(p.feature, p.opinion);

  // oracle: exhaustive subsentence scan pairing each feature occurrence with
  // every disjoint maximal ADJ run
  std::set<std::pair<std::string, std::string>> expected;
  for (const ReviewDoc& doc : docs) {
    for (const TokenSpan& sub : doc.subsentences) {
      for (const auto& f : features) {
        PhraseTokens ft = split_phrase(f.phrase);
        auto hits = find_phrase(doc.tokens, sub, ft);
        for (int h : hits) {
          int f_end = h + static_cast<int>(ft.size());
          int i = sub.begin;
          while (i < sub.end) {
            if (doc.tokens[static_cast<size_t>(i)].pos == PosTag::Adj) {
              int j = i;
              while (j < sub.end &&
                     doc.tokens[static_cast<size_t>(j)].pos == PosTag::Adj)
                ++j;
              if (j <= h || i >= f_end) {
                std::string op;
                for (int t = i; t < j; ++t) {
                  if (!op.empty()) op += ' ';
                  op += doc.tokens[static_cast<size_t>(t)].folded;
                }
                expected.emplace(f.phrase, op);
              }
              i = j;
            } else {
              ++i;
            }
          }
        }
      }
    }
  }
  CHECK(got == expected);
}

TEST_CASE("match_occurrences locates and negation-flags hits") {
  auto docs = docs_of({"service is excellent", "service is not excellent"});
  auto features = extract_feature_candidates(docs, 1);
  auto pairs = build_pairs(docs, features, 0.0, OpinionProfile::AdjOnly);
  REQUIRE(pairs.size() == 1);
  auto occs = match_occurrences(docs, pairs);
  REQUIRE(occs.size() == 2);
  CHECK(occs[0].review_id == "r0");
  CHECK(!occs[0].negated);
  CHECK(occs[1].review_id == "r1");
  CHECK(occs[1].negated);
}

TEST_CASE("fixture occurrences equal hand enumeration") {
  auto docs = docs_of(fixture_texts());
  auto features = extract_feature_candidates(docs, 1);
  auto pairs = build_pairs(docs, features, 0.0, OpinionProfile::AdjOnly);
  std::map<std::pair<std::string, std::string>, int> id_of;
  for (const auto& p : pairs) id_of[{p.feature, p.opinion}] = p.pair_id;

  auto occs = match_occurrences(docs, pairs);
  // every occurrence references a subsentence containing both phrases
  for (const auto& o : occs) {
    const ReviewDoc& doc = docs[static_cast<size_t>(o.review_index)];
    const TokenSpan& sub = doc.subsentences[static_cast<size_t>(o.subsentence)];
    CHECK(o.feature_pos >= sub.begin);
    CHECK(o.opinion_pos >= sub.begin);
    CHECK(o.feature_pos < sub.end);
    CHECK(o.opinion_pos < sub.end);
  }
  // hand enumeration of selected hits
  auto has = [&](int review, const char* f, const char* o, bool negated) {
    for (const auto& occ : occs) {
      if (occ.review_index == review && occ.pair_id == id_of.at({f, o}) &&
          occ.negated == negated)
        return true;
    }
    return false;
  };
  CHECK(has(0, "phone quality", "perfect", false));
  CHECK(has(1, "phone quality", "perfect", true));  // "is not perfect"
  CHECK(has(1, "service", "excellent", false));
  CHECK(has(2, "service", "awful", false));
  CHECK(has(4, "phone quality", "perfect", false));
}

TEST_CASE("build_A shares, signs and zero rows") {
  // r0: pair X twice unnegated among 4 occurrences -> 0.5
  // r1: pair X twice negated among 4 -> -0.5
  // r2: no pairs -> zero row
  auto docs = docs_of({
      "the screen is bright, the screen is bright, battery life is short, "
      "the case is heavy",
      "the screen is not bright, the screen is not bright, battery life is "
      "short, the case is heavy",
      "nothing to see here",
  });
  auto features = extract_feature_candidates(docs, 1);
  auto pairs = build_pairs(docs, features, 0.0, OpinionProfile::AdjOnly);
  std::map<std::pair<std::string, std::string>, int> id_of;
  for (const auto& p : pairs) id_of[{p.feature, p.opinion}] = p.pair_id;
  auto occs = match_occurrences(docs, pairs);
  ReviewPairMatrix A = build_A(occs, docs, static_cast<int>(pairs.size()));

  int screen_bright = id_of.at({"screen", "bright"});
  CHECK(A.A.coeff(0, screen_bright) == doctest::Approx(0.5));
  CHECK(A.A.coeff(1, screen_bright) == doctest::Approx(-0.5));

  Eigen::VectorXd row_abs = Eigen::VectorXd::Zero(3);
  for (int k = 0; k < A.A.outerSize(); ++k) {
    for (Eigen::SparseMatrix<double>::InnerIterator it(A.A, k); it; ++it)
      row_abs(it.row()) += std::abs(it.value());
  }
  CHECK(row_abs(0) == doctest::Approx(1.0));
  CHECK(row_abs(1) == doctest::Approx(1.0));
  CHECK(row_abs(2) == doctest::Approx(0.0));
}

TEST_CASE("row absolute sums are 0 or 1 on random corpora") {
  std::mt19937_64 rng(4242);
  for (int trial = 0; trial < 5; ++trial) {
    std::vector<std::string> texts;
    const char* nouns[] = {"screen", "battery", "case", "speaker"};
    const char* adjs[] = {"bright", "short", "heavy", "loud"};
    int n_reviews = 5 + senlex::testing::rand_index(rng, 10);
    for (int i = 0; i < n_reviews; ++i) {
      std::string text;
      int slots = senlex::testing::rand_index(rng, 4);
      for (int s = 0; s < slots; ++s) {
        if (s) text += ", ";
        text += std::string("the ") + nouns[senlex::testing::rand_index(rng, 4)];
        text += senlex::testing::rand_unit(rng) < 0.3 ? " is not " : " is ";
        text += adjs[senlex::testing::rand_index(rng, 4)];
      }
      texts.push_back(text.empty() ? "nothing here" : text);
    }
    auto docs = docs_of(texts);
    auto features = extract_feature_candidates(docs, 1);
    auto pairs = build_pairs(docs, features, 0.0, OpinionProfile::AdjOnly);
    auto occs = match_occurrences(docs, pairs);
    ReviewPairMatrix A = build_A(occs, docs, static_cast<int>(pairs.size()));
    Eigen::VectorXd row_abs = Eigen::VectorXd::Zero(A.A.rows());
    for (int k = 0; k < A.A.outerSize(); ++k) {
      for (Eigen::SparseMatrix<double>::InnerIterator it(A.A, k); it; ++it)
        row_abs(it.row()) += std::abs(it.value());
    }
    for (Eigen::Index i = 0; i < row_abs.size(); ++i) {
      bool ok = std::abs(row_abs(i)) < 1e-12 || std::abs(row_abs(i) - 1.0) < 1e-12;
      CHECK(ok);
    }
  }
}
