#include "senlex/corpus.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace senlex {

std::string to_string(PosTag tag) {
  switch (tag) {
    case PosTag::Noun: return "NOUN";
    case PosTag::Adj: return "ADJ";
    case PosTag::Verb: return "VERB";
    case PosTag::Adv: return "ADV";
    case PosTag::ConjAnd: return "CONJ_AND";
    case PosTag::ConjBut: return "CONJ_BUT";
    case PosTag::Neg: return "NEG";
    case PosTag::Punct: return "PUNCT";
    default: return "OTHER";
  }
}

namespace {

using json = nlohmann::json;

[[noreturn]] void record_error(long line, const std::string& what) {
  throw std::runtime_error("corpus line " + std::to_string(line) + ": " + what);
}

int require_star(const json& value, long line, const std::string& field) {
  if (!value.is_number_integer())
    record_error(line, "field '" + field + "' must be an integer star rating");
  int stars = value.get<int>();
  if (stars < 1 || stars > 5)
    record_error(line, "field '" + field + "' out of range [1,5]");
  return stars;
}

Review parse_record(const std::string& text_line, long line) {
  json rec;
  try {
    rec = json::parse(text_line);
  } catch (const json::parse_error& e) {
    record_error(line, std::string("malformed JSON (") + e.what() + ")");
  }
  if (!rec.is_object()) record_error(line, "record is not a JSON object");

  Review r;
  for (const char* field : {"id", "user", "item", "rating", "text"}) {
    if (!rec.contains(field))
      record_error(line, std::string("missing field '") + field + "'");
  }
  for (const char* field : {"id", "user", "item", "text"}) {
    if (!rec.at(field).is_string())
      record_error(line, std::string("field '") + field + "' must be a string");
  }
  r.review_id = rec.at("id").get<std::string>();
  r.user_id = rec.at("user").get<std::string>();
  r.item_id = rec.at("item").get<std::string>();
  r.overall_rating = require_star(rec.at("rating"), line, "rating");
  r.text = rec.at("text").get<std::string>();
  if (rec.contains("subratings") && !rec.at("subratings").is_null()) {
    const json& sub = rec.at("subratings");
    if (!sub.is_array() || sub.size() != 3)
      record_error(line, "field 'subratings' must be a 3-element array");
    std::array<int, 3> vals{};
    for (size_t i = 0; i < 3; ++i)
      vals[i] = require_star(sub.at(i), line, "subratings");
    r.subaspect_ratings = vals;
  }
  return r;
}

}  // namespace

std::vector<Review> load_corpus(const std::filesystem::path& path,
                                const std::string& format) {
  if (format != "jsonl")
    throw std::runtime_error("unknown corpus format: '" + format + "'");
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open corpus file: " + path.string());

  std::vector<Review> reviews;
  std::set<std::string> seen;
  std::string line;
  long lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    Review r = parse_record(line, lineno);
    if (!seen.insert(r.review_id).second)
      record_error(lineno, "duplicate review id '" + r.review_id + "'");
    reviews.push_back(std::move(r));
  }
  return reviews;
}

// ---------------------------------------------------------------------------
// Tokenization and tagging

namespace {

struct Codepoint {
  char32_t value;
  int bytes;
};

Codepoint decode_utf8(const std::string& s, size_t i) {
  unsigned char c = static_cast<unsigned char>(s[i]);
  if (c < 0x80) return {c, 1};
  int len = (c >= 0xF0) ? 4 : (c >= 0xE0) ? 3 : 2;
  char32_t cp = c & (0xFF >> (len + 1));
  for (int k = 1; k < len; ++k) {
    if (i + k >= s.size()) return {0xFFFD, 1};
    cp = (cp << 6) | (static_cast<unsigned char>(s[i + k]) & 0x3F);
  }
  return {cp, len};
}

bool is_space_cp(char32_t cp) {
  return cp == ' ' || cp == '\t' || cp == '\n' || cp == '\r' || cp == 0x00A0 ||
         cp == 0x2028 || cp == 0x2029 || cp == 0x3000;
}

bool is_punct_cp(char32_t cp) {
  if (cp < 0x80)
    return !(std::isalnum(static_cast<int>(cp)) || cp == '_' || cp == '\'');
  switch (cp) {
    case 0x2026:  // ellipsis
    case 0x3002: case 0xFF01: case 0xFF1F: case 0xFF0C: case 0xFF1B:
    case 0x3001: case 0xFF1A: case 0x201C: case 0x201D: case 0x2018:
    case 0x2019: case 0x00B7:
      return true;
    default:
      return false;
  }
}

const std::set<std::string>& sentence_enders() {
  static const std::set<std::string> s = {".", "!", "?", ";", "…",
                                          "。", "！", "？", "；"};
  return s;
}

const std::set<std::string>& subsentence_enders() {
  static const std::set<std::string> s = {",", "，", "、"};
  return s;
}

struct SuffixRule {
  const char* suffix;
  PosTag tag;
};

// Checked in order; a rule applies only when the stem keeps >= 2 characters.
constexpr SuffixRule kSuffixRules[] = {
    {"ly", PosTag::Adv},
    {"ness", PosTag::Noun}, {"ment", PosTag::Noun}, {"tion", PosTag::Noun},
    {"sion", PosTag::Noun}, {"ship", PosTag::Noun}, {"hood", PosTag::Noun},
    {"ity", PosTag::Noun},  {"ance", PosTag::Noun}, {"ence", PosTag::Noun},
    {"ism", PosTag::Noun},
    {"ful", PosTag::Adj},   {"less", PosTag::Adj},  {"ous", PosTag::Adj},
    {"ive", PosTag::Adj},   {"able", PosTag::Adj},  {"ible", PosTag::Adj},
    {"ish", PosTag::Adj},
    {"ize", PosTag::Verb},  {"ise", PosTag::Verb},  {"ify", PosTag::Verb},
};

std::map<std::string, PosTag> builtin_dictionary() {
  std::map<std::string, PosTag> d;
  auto add = [&](std::initializer_list<const char*> words, PosTag tag) {
    for (const char* w : words) d.emplace(w, tag);
  };
  add({"phone",    "quality",  "service",   "sound",    "effect",   "screen",
       "battery",  "price",    "player",    "music",    "song",     "button",
       "design",   "size",     "memory",    "storage",  "camera",   "display",
       "speaker",  "headphone","volume",    "interface","software", "menu",
       "food",     "flavour",  "flavor",    "taste",    "dish",     "staff",
       "restaurant","seller",  "product",   "feature",  "feat",     "aspect",
       "life",     "time",     "value",     "money",    "color",    "colour",
       "weight",   "keyboard", "case",      "charger",  "cable",    "manual",
       "warranty", "shipping", "delivery",  "packaging","box",      "brand",
       "model",    "version",  "system",    "device",   "gift",     "thing",
       "item",     "noise",    "environment"},
      PosTag::Noun);
  add({"good",     "great",    "bad",       "excellent","perfect",  "clear",
       "nice",     "cool",     "fantastic", "awesome",  "amazing",  "wonderful",
       "terrible", "awful",    "horrible",  "poor",     "cheap",    "expensive",
       "high",     "low",      "big",       "small",    "large",    "tiny",
       "easy",     "hard",     "difficult", "simple",   "fast",     "slow",
       "quick",    "loud",     "quiet",     "bright",   "dark",     "heavy",
       "light",    "long",     "short",     "new",      "old",      "fresh",
       "stale",    "clean",    "dirty",     "friendly", "rude",     "sturdy",
       "flimsy",   "sleek",    "shiny",     "grim",     "vivid",    "bleak",
       "crisp",    "dull",     "noisy",     "tasty",    "delicious","bland",
       "happy",    "sad",      "decent",    "solid",    "crappy",   "lousy",
       "superb",   "mediocre", "smooth",    "soft",     "fine",     "worth",
       "durable",  "reliable", "defective", "broken",   "best",     "worst",
       "weak",     "wrong",    "ugly",      "fragile",  "faulty",   "plush",
       "roomy",    "cozy",     "grimy",     "shabby",   "snug",     "stark"},
      PosTag::Adj);
  add({"is",   "are",  "was",  "were", "be",   "been", "being", "have",
       "has",  "had",  "do",   "does", "did",  "work", "works", "worked",
       "buy",  "bought","use", "used", "love", "loved","like",  "liked",
       "hate", "hated","recommend", "returned", "broke", "looks", "seems",
       "arrived", "came", "went", "get", "got", "make", "made"},
      PosTag::Verb);
  add({"very", "really", "quite", "too", "so", "extremely", "highly",
       "pretty", "rather", "somewhat", "almost", "always", "often",
       "usually", "sometimes", "definitely", "absolutely", "totally",
       "again", "still", "well"},
      PosTag::Adv);
  return d;
}

}  // namespace

RuleTagger::RuleTagger(const GeneralLexicon& lex)
    : negation_(lex.negation_words),
      and_(lex.and_words),
      but_(lex.but_words),
      dictionary_(builtin_dictionary()) {}

void RuleTagger::add_dictionary_entry(const std::string& word, PosTag tag) {
  dictionary_[fold_case(word)] = tag;
}

PosTag RuleTagger::classify_word(const std::string& folded) const {
  if (negation_.count(folded)) return PosTag::Neg;
  if (negation_.count("n't") && folded.size() > 3 &&
      folded.compare(folded.size() - 3, 3, "n't") == 0)
    return PosTag::Neg;
  if (and_.count(folded)) return PosTag::ConjAnd;
  if (but_.count(folded)) return PosTag::ConjBut;

  auto it = dictionary_.find(folded);
  if (it != dictionary_.end()) return it->second;
  for (const SuffixRule& rule : kSuffixRules) {
    size_t len = std::char_traits<char>::length(rule.suffix);
    if (folded.size() >= len + 2 &&
        folded.compare(folded.size() - len, len, rule.suffix) == 0)
      return rule.tag;
  }

  // Unknown-word fallback: strip a trailing index ("screen_3" -> "screen")
  // and retry the dictionary and suffix rules on the stem.
  size_t end = folded.size();
  while (end > 0 && std::isdigit(static_cast<unsigned char>(folded[end - 1]))) --end;
  if (end < folded.size()) {
    if (end > 0 && folded[end - 1] == '_') --end;
    if (end >= 2) {
      std::string stem = folded.substr(0, end);
      auto sit = dictionary_.find(stem);
      if (sit != dictionary_.end()) return sit->second;
      for (const SuffixRule& rule : kSuffixRules) {
        size_t len = std::char_traits<char>::length(rule.suffix);
        if (stem.size() >= len + 2 &&
            stem.compare(stem.size() - len, len, rule.suffix) == 0)
          return rule.tag;
      }
    }
  }
  return PosTag::Other;
}

std::vector<Token> RuleTagger::tag(const std::string& text) const {
  std::vector<Token> tokens;
  std::string current;
  auto flush_word = [&]() {
    if (current.empty()) return;
    Token t;
    t.surface = current;
    t.folded = fold_case(current);
    t.pos = classify_word(t.folded);
    t.index = static_cast<int>(tokens.size());
    tokens.push_back(std::move(t));
    current.clear();
  };

  for (size_t i = 0; i < text.size();) {
    Codepoint cp = decode_utf8(text, i);
    std::string bytes = text.substr(i, cp.bytes);
    if (is_space_cp(cp.value)) {
      flush_word();
    } else if (is_punct_cp(cp.value)) {
      flush_word();
      Token t;
      t.surface = bytes;
      t.folded = bytes;
      t.pos = PosTag::Punct;
      t.index = static_cast<int>(tokens.size());
      tokens.push_back(std::move(t));
    } else {
      current += bytes;
    }
    i += cp.bytes;
  }
  flush_word();
  return tokens;
}

ReviewDoc segment_and_tag(const Review& review, const Tagger& tagger) {
  ReviewDoc doc;
  doc.review = review;
  doc.tokens = tagger.tag(review.text);

  int sent_begin = 0;
  int sub_begin = 0;
  for (int i = 0; i < static_cast<int>(doc.tokens.size()); ++i) {
    const Token& t = doc.tokens[i];
    if (t.pos != PosTag::Punct) {
      ++doc.word_length;
      continue;
    }
    bool ends_sentence = sentence_enders().count(t.folded) > 0;
    bool ends_subsentence = ends_sentence || subsentence_enders().count(t.folded) > 0;
    if (ends_subsentence) {
      doc.subsentences.push_back({sub_begin, i + 1});
      sub_begin = i + 1;
    }
    if (ends_sentence) {
      doc.sentences.push_back({sent_begin, i + 1});
      sent_begin = i + 1;
    }
  }
  int n = static_cast<int>(doc.tokens.size());
  if (sub_begin < n) doc.subsentences.push_back({sub_begin, n});
  if (sent_begin < n) doc.sentences.push_back({sent_begin, n});
  return doc;
}

// ---------------------------------------------------------------------------
// Rating statistics

namespace {

ChannelStats channel_stats(const std::vector<std::pair<std::string, int>>& ratings) {
  ChannelStats cs;
  cs.n_ratings = static_cast<long>(ratings.size());
  // histogram accumulation keeps the statistics exactly permutation-invariant
  std::array<long, 5> hist{};
  for (const auto& [user, stars] : ratings)
    ++hist[static_cast<size_t>(stars - 1)];
  long star_sum = 0;
  for (int s = 0; s < 5; ++s) {
    cs.per_star_fraction[static_cast<size_t>(s)] =
        static_cast<double>(hist[static_cast<size_t>(s)]) /
        static_cast<double>(cs.n_ratings);
    star_sum += hist[static_cast<size_t>(s)] * (s + 1);
  }
  cs.mu = static_cast<double>(star_sum) / static_cast<double>(cs.n_ratings);
  double sq = 0.0;
  for (int s = 0; s < 5; ++s) {
    double d = (s + 1) - cs.mu;
    sq += static_cast<double>(hist[static_cast<size_t>(s)]) * d * d;
  }
  cs.sigma = std::sqrt(sq / static_cast<double>(cs.n_ratings));
  cs.cv = cs.sigma / cs.mu;

  std::map<std::string, std::pair<long, long>> per_user;  // user -> (4+, total)
  for (const auto& [user, stars] : ratings) {
    auto& [high, total] = per_user[user];
    if (stars >= 4) ++high;
    ++total;
  }
  for (const auto& [user, counts] : per_user)
    cs.per_user_4plus[user] =
        static_cast<double>(counts.first) / static_cast<double>(counts.second);
  return cs;
}

}  // namespace

RatingStats rating_stats(const std::vector<Review>& reviews) {
  if (reviews.empty()) throw std::runtime_error("rating_stats: empty corpus");
  std::vector<std::pair<std::string, int>> overall;
  std::array<std::vector<std::pair<std::string, int>>, 3> sub;
  for (const Review& r : reviews) {
    overall.emplace_back(r.user_id, r.overall_rating);
    if (r.subaspect_ratings) {
      for (size_t k = 0; k < 3; ++k)
        sub[k].emplace_back(r.user_id, (*r.subaspect_ratings)[k]);
    }
  }
  RatingStats stats;
  stats.overall = channel_stats(overall);
  if (!sub[0].empty()) {
    stats.flavour = channel_stats(sub[0]);
    stats.environment = channel_stats(sub[1]);
    stats.service = channel_stats(sub[2]);
  }
  return stats;
}

void write_stats_report(const RatingStats& stats, std::ostream& out) {
  std::vector<std::pair<std::string, const ChannelStats*>> channels;
  channels.emplace_back("overall", &stats.overall);
  if (stats.flavour) channels.emplace_back("flavour", &*stats.flavour);
  if (stats.environment) channels.emplace_back("environment", &*stats.environment);
  if (stats.service) channels.emplace_back("service", &*stats.service);

  out << "# rating distribution (fraction per star)\n";
  out << "channel\tn\t1\t2\t3\t4\t5\tmu\tsigma\tcv\n";
  char buf[64];
  for (const auto& [name, cs] : channels) {
    out << name << '\t' << cs->n_ratings;
    for (double f : cs->per_star_fraction) {
      std::snprintf(buf, sizeof(buf), "%.6f", f);
      out << '\t' << buf;
    }
    std::snprintf(buf, sizeof(buf), "%.4f\t%.4f\t%.4f", cs->mu, cs->sigma, cs->cv);
    out << '\t' << buf << '\n';
  }

  out << "\n# per-user fraction of 4+ star ratings, descending\n";
  for (const auto& [name, cs] : channels) {
    out << "channel\t" << name << '\n';
    std::vector<std::pair<std::string, double>> rows(cs->per_user_4plus.begin(),
                                                     cs->per_user_4plus.end());
    std::stable_sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) {
      if (a.second != b.second) return a.second > b.second;
      return a.first < b.first;
    });
    for (const auto& [user, frac] : rows) {
      std::snprintf(buf, sizeof(buf), "%.6f", frac);
      out << user << '\t' << buf << '\n';
    }
  }
}

}  // namespace senlex
