#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "senlex/corpus.hpp"
#include "support/tmpdir.hpp"

using namespace senlex;
using senlex::testing::TmpDir;

namespace {

RuleTagger default_tagger() { return RuleTagger(default_lexicon()); }

ReviewDoc doc_of(const std::string& text) {
  Review r;
  r.review_id = "r";
  r.overall_rating = 4;
  r.text = text;
  return segment_and_tag(r, default_tagger());
}

PosTag tag_of(const ReviewDoc& doc, const std::string& surface) {
  for (const Token& t : doc.tokens) {
    if (t.folded == surface) return t.pos;
  }
  FAIL("token not found: ", surface);
  return PosTag::Other;
}

}  // namespace

TEST_CASE("load_corpus returns records in order") {
  TmpDir tmp("corpus");
  auto path = tmp.write(
      "c.jsonl",
      R"({"id":"a","user":"u1","item":"i1","rating":5,"text":"fine"})" "\n"
      R"({"id":"b","user":"u2","item":"i1","rating":1,"text":"bad"})" "\n"
      R"({"id":"c","user":"u1","item":"i2","rating":3,"subratings":[1,2,3],"text":"meh"})" "\n");
  auto reviews = load_corpus(path);
  REQUIRE(reviews.size() == 3);
  CHECK(reviews[0].review_id == "a");
  CHECK(reviews[2].subaspect_ratings.has_value());
  CHECK((*reviews[2].subaspect_ratings)[2] == 3);
}

TEST_CASE("empty corpus file loads as empty list") {
  TmpDir tmp("corpus");
  CHECK(load_corpus(tmp.write("c.jsonl", "")).empty());
}

TEST_CASE("malformed records name the line and field") {
  TmpDir tmp("corpus");
  auto missing = tmp.write(
      "m.jsonl",
      R"({"id":"a","user":"u","item":"i","rating":4,"text":"x"})" "\n"
      R"({"id":"b","user":"u","item":"i","text":"no rating"})" "\n");
  CHECK_THROWS_WITH_AS(load_corpus(missing), doctest::Contains("line 2"),
                       std::runtime_error);
  CHECK_THROWS_WITH_AS(load_corpus(missing), doctest::Contains("rating"),
                       std::runtime_error);

  auto range = tmp.write(
      "r.jsonl", R"({"id":"a","user":"u","item":"i","rating":6,"text":"x"})" "\n");
  CHECK_THROWS_AS(load_corpus(range), std::runtime_error);

  auto dup = tmp.write(
      "d.jsonl",
      R"({"id":"a","user":"u","item":"i","rating":4,"text":"x"})" "\n"
      R"({"id":"a","user":"u","item":"i","rating":2,"text":"y"})" "\n");
  CHECK_THROWS_WITH_AS(load_corpus(dup), doctest::Contains("duplicate"),
                       std::runtime_error);

  CHECK_THROWS_AS(load_corpus(tmp.write("f.jsonl", "not json\n")),
                  std::runtime_error);
  CHECK_THROWS_AS(load_corpus(tmp.file("c.jsonl"), "xml"), std::runtime_error);
}

TEST_CASE("tagging the running example sentence") {
  ReviewDoc doc = doc_of("Phone quality is perfect and the service is excellent.");
  CHECK(doc.sentences.size() == 1);
  CHECK(tag_of(doc, "and") == PosTag::ConjAnd);
  CHECK(tag_of(doc, "quality") == PosTag::Noun);
  CHECK(tag_of(doc, "service") == PosTag::Noun);
  CHECK(tag_of(doc, "perfect") == PosTag::Adj);
  CHECK(tag_of(doc, "excellent") == PosTag::Adj);
}

TEST_CASE("negation, contrast conjunction and comma subsentences") {
  ReviewDoc doc = doc_of("not good, but bad");
  CHECK(tag_of(doc, "not") == PosTag::Neg);
  CHECK(tag_of(doc, "but") == PosTag::ConjBut);
  CHECK(doc.subsentences.size() == 2);
  CHECK(doc.word_length == 4);
}

TEST_CASE("empty text tags to an empty doc") {
  ReviewDoc doc = doc_of("");
  CHECK(doc.tokens.empty());
  CHECK(doc.sentences.empty());
  CHECK(doc.subsentences.empty());
}

TEST_CASE("suffix rules and indexed-stem fallback") {
  ReviewDoc doc = doc_of("happiness is useful, feat_3 is shiny_7, zorgly blum");
  CHECK(tag_of(doc, "happiness") == PosTag::Noun);
  CHECK(tag_of(doc, "useful") == PosTag::Adj);
  CHECK(tag_of(doc, "feat_3") == PosTag::Noun);
  CHECK(tag_of(doc, "shiny_7") == PosTag::Adj);
  CHECK(tag_of(doc, "zorgly") == PosTag::Adv);
  CHECK(tag_of(doc, "blum") == PosTag::Other);
}

TEST_CASE("n't negation and token indices increase") {
  ReviewDoc doc = doc_of("isn't good; really good!");
  CHECK(tag_of(doc, "isn't") == PosTag::Neg);
  CHECK(doc.sentences.size() == 2);
  for (size_t i = 0; i < doc.tokens.size(); ++i)
    CHECK(doc.tokens[i].index == static_cast<int>(i));
}

TEST_CASE("subsentence spans partition sentences exactly") {
  const char* samples[] = {
      "Phone quality is perfect and the service is excellent.",
      "not good, but bad",
      "a, b; c! d",
      "one. two, three... four",
      "trailing words without punctuation",
  };
  for (const char* text : samples) {
    CAPTURE(text);
    ReviewDoc doc = doc_of(text);
    std::vector<int> from_subs;
    for (const TokenSpan& sub : doc.subsentences) {
      CHECK(sub.begin < sub.end);
      for (int i = sub.begin; i < sub.end; ++i) from_subs.push_back(i);
    }
    std::vector<int> from_sents;
    for (const TokenSpan& s : doc.sentences) {
      for (int i = s.begin; i < s.end; ++i) from_sents.push_back(i);
    }
    CHECK(from_subs == from_sents);
    // spans are disjoint and increasing
    CHECK(std::is_sorted(from_subs.begin(), from_subs.end()));
    CHECK(std::adjacent_find(from_subs.begin(), from_subs.end()) == from_subs.end());
  }
}

TEST_CASE("rating stats on constant input") {
  std::vector<Review> reviews;
  for (int i = 0; i < 3; ++i) {
    Review r;
    r.review_id = "r" + std::to_string(i);
    r.user_id = "u";
    r.overall_rating = 4;
    reviews.push_back(r);
  }
  RatingStats s = rating_stats(reviews);
  CHECK(s.overall.mu == doctest::Approx(4.0));
  CHECK(s.overall.sigma == doctest::Approx(0.0));
  CHECK(s.overall.cv == doctest::Approx(0.0));
  CHECK(s.overall.per_user_4plus.at("u") == doctest::Approx(1.0));
  CHECK(!s.flavour.has_value());
}

TEST_CASE("rating stats on symmetric input") {
  std::vector<Review> reviews(2);
  reviews[0].review_id = "a";
  reviews[0].overall_rating = 1;
  reviews[1].review_id = "b";
  reviews[1].overall_rating = 5;
  RatingStats s = rating_stats(reviews);
  CHECK(s.overall.mu == doctest::Approx(3.0));
  CHECK(s.overall.per_star_fraction[0] == doctest::Approx(0.5));
  CHECK(s.overall.per_star_fraction[4] == doctest::Approx(0.5));
  CHECK(s.overall.per_star_fraction[1] == doctest::Approx(0.0));
}

TEST_CASE("rating stats: empty corpus is an error") {
  CHECK_THROWS_AS(rating_stats({}), std::runtime_error);
}

TEST_CASE("rating stats match an independent recomputation to 1e-12") {
  // 1000 synthetic ratings via a fixed linear congruential stream
  std::vector<Review> reviews;
  std::uint64_t state = 12345;
  auto next = [&]() {
    state = state * 6364136223846793005ull + 1442695040888963407ull;
    return state >> 33;
  };
  for (int i = 0; i < 1000; ++i) {
    Review r;
    r.review_id = "r" + std::to_string(i);
    r.user_id = "u" + std::to_string(next() % 37);
    r.overall_rating = 1 + static_cast<int>(next() % 5);
    r.subaspect_ratings = std::array<int, 3>{1 + static_cast<int>(next() % 5),
                                             1 + static_cast<int>(next() % 5),
                                             1 + static_cast<int>(next() % 5)};
    reviews.push_back(r);
  }
  RatingStats s = rating_stats(reviews);

  // direct long-double recomputation of the overall channel
  long double sum = 0.0L;
  std::array<long, 5> hist{};
  std::map<std::string, std::pair<long, long>> users;
  for (const Review& r : reviews) {
    sum += r.overall_rating;
    hist[static_cast<size_t>(r.overall_rating - 1)] += 1;
    auto& [high, tot] = users[r.user_id];
    if (r.overall_rating >= 4) ++high;
    ++tot;
  }
  long double mu = sum / 1000.0L;
  long double sq = 0.0L;
  for (const Review& r : reviews) sq += (r.overall_rating - mu) * (r.overall_rating - mu);
  long double sigma = std::sqrt(sq / 1000.0L);

  CHECK(std::abs(s.overall.mu - static_cast<double>(mu)) < 1e-12);
  CHECK(std::abs(s.overall.sigma - static_cast<double>(sigma)) < 1e-12);
  CHECK(std::abs(s.overall.cv - static_cast<double>(sigma / mu)) < 1e-12);
  double frac_sum = 0.0;
  for (int star = 0; star < 5; ++star) {
    CHECK(std::abs(s.overall.per_star_fraction[static_cast<size_t>(star)] -
                   hist[static_cast<size_t>(star)] / 1000.0) < 1e-12);
    frac_sum += s.overall.per_star_fraction[static_cast<size_t>(star)];
  }
  CHECK(std::abs(frac_sum - 1.0) < 1e-12);
  for (const auto& [user, counts] : users) {
    CHECK(std::abs(s.overall.per_user_4plus.at(user) -
                   static_cast<double>(counts.first) / counts.second) < 1e-12);
  }
  REQUIRE(s.flavour.has_value());
  CHECK(s.flavour->n_ratings == 1000);
}

TEST_CASE("rating stats are permutation invariant") {
  std::vector<Review> reviews;
  std::mt19937_64 rng(99);
  for (int i = 0; i < 50; ++i) {
    Review r;
    r.review_id = "r" + std::to_string(i);
    r.user_id = "u" + std::to_string(rng() % 7);
    r.overall_rating = 1 + static_cast<int>(rng() % 5);
    reviews.push_back(r);
  }
  RatingStats a = rating_stats(reviews);
  std::shuffle(reviews.begin(), reviews.end(), rng);
  RatingStats b = rating_stats(reviews);
  CHECK(a.overall.mu == b.overall.mu);
  CHECK(a.overall.sigma == b.overall.sigma);
  CHECK(a.overall.per_star_fraction == b.overall.per_star_fraction);
  CHECK(a.overall.per_user_4plus == b.overall.per_user_4plus);
  CHECK(a.overall.cv == a.overall.sigma / a.overall.mu);
}

TEST_CASE("stats report lists per-user fractions in descending order") {
  std::vector<Review> reviews;
  int id = 0;
  auto add = [&](const std::string& user, int rating) {
    Review r;
    r.review_id = "r" + std::to_string(id++);
    r.user_id = user;
    r.overall_rating = rating;
    reviews.push_back(r);
  };
  add("low", 1);
  add("low", 2);
  add("high", 5);
  add("mid", 5);
  add("mid", 1);
  std::ostringstream out;
  write_stats_report(rating_stats(reviews), out);
  std::string report = out.str();
  CHECK(report.find("high") < report.find("mid"));
  CHECK(report.find("mid") < report.find("low"));
}
