#include "senlex/seedlex.hpp"

#include <cctype>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace senlex {

std::string to_string(Polarity p) {
  switch (p) {
    case Polarity::Positive: return "positive";
    case Polarity::Negative: return "negative";
    default: return "unknown";
  }
}

Polarity polarity_from_string(std::string_view s) {
  if (s == "positive" || s == "pos" || s == "+") return Polarity::Positive;
  if (s == "negative" || s == "neg" || s == "-") return Polarity::Negative;
  throw std::runtime_error("unrecognized polarity label: '" + std::string(s) + "'");
}

std::string fold_case(std::string_view s) {
  std::string out(s);
  for (char& c : out) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  }
  return out;
}

namespace {

std::set<std::string> fold_all(std::initializer_list<const char*> words) {
  std::set<std::string> out;
  for (const char* w : words) out.insert(fold_case(w));
  return out;
}

std::string trim(const std::string& s) {
  size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

// One entry per line; '#' starts a comment. Multi-word entries keep their
// internal single spaces so they can be matched as token sequences.
std::set<std::string> load_plain(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open word-set file: " + path.string());
  std::set<std::string> out;
  std::string line;
  while (std::getline(in, line)) {
    size_t hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    std::string entry = trim(line);
    if (entry.empty()) continue;
    out.insert(fold_case(entry));
  }
  return out;
}

// MPQA subjectivity-clues lines: key=value fields, space separated. We keep
// word1= entries whose priorpolarity is positive or negative.
std::set<std::string> load_mpqa(const std::filesystem::path& path, Polarity want) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open word-set file: " + path.string());
  std::set<std::string> out;
  std::string line;
  while (std::getline(in, line)) {
    std::string word, prior;
    std::istringstream fields(line);
    std::string field;
    while (fields >> field) {
      if (field.rfind("word1=", 0) == 0) word = field.substr(6);
      else if (field.rfind("priorpolarity=", 0) == 0) prior = field.substr(14);
    }
    if (word.empty()) continue;
    Polarity p = Polarity::Unknown;
    if (prior == "positive") p = Polarity::Positive;
    else if (prior == "negative") p = Polarity::Negative;
    if (p == want) out.insert(fold_case(word));
  }
  return out;
}

void check_disjoint(const std::set<std::string>& pos, const std::set<std::string>& neg) {
  std::vector<std::string> both;
  for (const auto& w : pos) {
    if (neg.count(w)) both.push_back(w);
  }
  if (!both.empty()) {
    std::string msg = "words listed as both positive and negative:";
    for (const auto& w : both) msg += " " + w;
    throw std::runtime_error(msg);
  }
}

}  // namespace

GeneralLexicon default_lexicon() {
  GeneralLexicon lex;
  lex.classifier_pos_seeds = fold_all(
      {"good", "great", "excellent", "perfect", "nice", "cool", "fantastic",
       "awesome", "amazing", "wonderful", "best", "happy", "helpful",
       "friendly", "easy", "fast", "clear", "comfortable", "delicious",
       "tasty", "superb", "outstanding", "reliable", "sturdy", "smooth",
       "fresh", "clean", "decent", "solid", "durable", "impressive"});
  lex.classifier_neg_seeds = fold_all(
      {"bad", "dull", "terrible", "awful", "horrible", "poor", "worst",
       "slow", "broken", "defective", "noisy", "dirty", "rude", "useless",
       "disappointing", "disappointed", "flimsy", "stale", "bland", "crappy",
       "lousy", "mediocre", "rough", "weak", "wrong", "ugly", "annoying",
       "cheap", "fragile", "faulty", "unreliable"});
  lex.positive_words = lex.classifier_pos_seeds;
  lex.negative_words = lex.classifier_neg_seeds;
  lex.negation_words = fold_all({"no", "not", "never", "hardly", "n't",
                                 "barely", "scarcely", "neither", "nor",
                                 "cannot", "without"});
  lex.and_words = fold_all({"and"});
  lex.but_words = fold_all({"but", "however", "yet"});
  return lex;
}

GeneralLexicon load_word_sets(
    const std::map<std::string, std::filesystem::path>& paths,
    WordSetFormat format) {
  static const std::set<std::string> known_roles = {
      "positive", "negative", "negation", "and", "but",
      "seeds_positive", "seeds_negative"};
  for (const auto& [role, path] : paths) {
    if (!known_roles.count(role))
      throw std::runtime_error("unknown word-set role: '" + role + "'");
  }
  auto require = [&](const std::string& role) {
    auto it = paths.find(role);
    if (it == paths.end())
      throw std::runtime_error("word-set role '" + role + "' is required");
    return it->second;
  };

  GeneralLexicon lex = default_lexicon();
  if (format == WordSetFormat::Mpqa) {
    lex.positive_words = load_mpqa(require("positive"), Polarity::Positive);
    lex.negative_words = load_mpqa(require("negative"), Polarity::Negative);
  } else {
    lex.positive_words = load_plain(require("positive"));
    lex.negative_words = load_plain(require("negative"));
  }
  check_disjoint(lex.positive_words, lex.negative_words);

  auto maybe_load = [&](const std::string& role, std::set<std::string>& target) {
    auto it = paths.find(role);
    if (it != paths.end()) target = load_plain(it->second);
  };
  maybe_load("negation", lex.negation_words);
  maybe_load("and", lex.and_words);
  maybe_load("but", lex.but_words);
  maybe_load("seeds_positive", lex.classifier_pos_seeds);
  maybe_load("seeds_negative", lex.classifier_neg_seeds);
  check_disjoint(lex.classifier_pos_seeds, lex.classifier_neg_seeds);
  return lex;
}

Polarity polarity_of(std::string_view word, const GeneralLexicon& lex) {
  std::string w = fold_case(word);
  if (lex.positive_words.count(w)) return Polarity::Positive;
  if (lex.negative_words.count(w)) return Polarity::Negative;
  return Polarity::Unknown;
}

}  // namespace senlex
