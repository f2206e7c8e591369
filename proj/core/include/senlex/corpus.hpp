#pragma once

#include <array>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "senlex/seedlex.hpp"

namespace senlex {

struct Review {
  std::string review_id;
  std::string user_id;
  std::string item_id;
  int overall_rating = 0;  // stars in [1,5]
  std::optional<std::array<int, 3>> subaspect_ratings;  // flavour, environment, service
  std::string text;
};

enum class PosTag { Noun, Adj, Verb, Adv, ConjAnd, ConjBut, Neg, Punct, Other };

std::string to_string(PosTag tag);

struct Token {
  std::string surface;
  std::string folded;  // case-folded surface, used for all matching
  PosTag pos = PosTag::Other;
  int index = 0;  // 0-based position within the review, punctuation included
};

struct TokenSpan {
  int begin = 0;  // inclusive
  int end = 0;    // exclusive
  int size() const { return end - begin; }
};

struct ReviewDoc {
  Review review;
  std::vector<Token> tokens;
  std::vector<TokenSpan> sentences;
  std::vector<TokenSpan> subsentences;  // partition each sentence in order
  int word_length = 0;                  // non-punctuation token count
};

/// Tagging plugin. Implementations tokenize raw text and assign coarse tags;
/// everything downstream operates on the token stream only.
class Tagger {
 public:
  virtual ~Tagger() = default;
  virtual std::vector<Token> tag(const std::string& text) const = 0;
};

/// Bundled default: whitespace/punctuation tokenizer plus a dictionary and
/// suffix-rule tagger. Negation and conjunction tags come from the word sets
/// of the given lexicon. Unknown words with a trailing index ("screen_3")
/// are retried on their stem, so generated vocabularies tag cleanly.
class RuleTagger : public Tagger {
 public:
  explicit RuleTagger(const GeneralLexicon& lex);
  void add_dictionary_entry(const std::string& word, PosTag tag);
  std::vector<Token> tag(const std::string& text) const override;

 private:
  PosTag classify_word(const std::string& folded) const;
  std::set<std::string> negation_, and_, but_;
  std::map<std::string, PosTag> dictionary_;
};

/// Reads a corpus file. The only built-in format id is "jsonl": one JSON
/// object per line with fields {id, user, item, rating, subratings?, text}.
std::vector<Review> load_corpus(const std::filesystem::path& path,
                                const std::string& format = "jsonl");

/// Tokenizes, tags and segments one review. Sentences end at {. ! ? ; ...};
/// subsentences additionally end at commas. Empty text yields an empty doc.
ReviewDoc segment_and_tag(const Review& review, const Tagger& tagger);

struct ChannelStats {
  std::array<double, 5> per_star_fraction{};  // 1..5 stars
  double mu = 0.0;
  double sigma = 0.0;  // population standard deviation
  double cv = 0.0;     // sigma / mu
  std::map<std::string, double> per_user_4plus;
  long n_ratings = 0;
};

struct RatingStats {
  ChannelStats overall;
  std::optional<ChannelStats> flavour;
  std::optional<ChannelStats> environment;
  std::optional<ChannelStats> service;
};

/// Rating-distribution statistics per channel. Sub-aspect channels are
/// computed over the reviews that carry sub-aspect ratings; they are absent
/// when no review does. Throws on an empty corpus.
RatingStats rating_stats(const std::vector<Review>& reviews);

/// Tabular text report: per-star fractions, mu/sigma/cv per channel, and the
/// per-user 4+ star fractions sorted in descending order.
void write_stats_report(const RatingStats& stats, std::ostream& out);

}  // namespace senlex
