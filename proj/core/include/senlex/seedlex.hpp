#pragma once

#include <filesystem>
#include <map>
#include <set>
#include <string>
#include <string_view>

namespace senlex {

enum class Polarity { Positive, Negative, Unknown };

std::string to_string(Polarity p);
Polarity polarity_from_string(std::string_view s);

/// ASCII-lowercases a string; non-ASCII bytes pass through untouched.
std::string fold_case(std::string_view s);

enum class WordSetFormat { Plain, Mpqa };

/// The fixed word sets the pipeline relies on: general positive/negative
/// opinion words, classifier seeds, negation words and conjunction words.
/// All entries are case-folded at load time.
struct GeneralLexicon {
  std::set<std::string> positive_words;
  std::set<std::string> negative_words;
  std::set<std::string> negation_words;
  std::set<std::string> and_words;
  std::set<std::string> but_words;
  std::set<std::string> classifier_pos_seeds;
  std::set<std::string> classifier_neg_seeds;
};

/// Built-in defaults: ~30 classifier seeds per polarity, a small negation
/// set and conjunction sets. The general positive/negative sets default to
/// the seed lists; real runs should point them at a full opinion corpus.
GeneralLexicon default_lexicon();

/// Loads word sets from files. Recognized roles:
///   "positive", "negative"            general opinion words (required)
///   "negation", "and", "but"          optional, bundled defaults otherwise
///   "seeds_positive", "seeds_negative" optional classifier seeds; default to
///                                      the built-in seed lists
/// With WordSetFormat::Mpqa the positive/negative roles may point at the same
/// subjectivity-clues file; entries are split on their priorpolarity.
/// Throws if a word ends up in both the positive and the negative set.
GeneralLexicon load_word_sets(
    const std::map<std::string, std::filesystem::path>& paths,
    WordSetFormat format = WordSetFormat::Plain);

/// Membership lookup after case folding. Never returns both polarities for
/// one lexicon; disjointness is enforced at load.
Polarity polarity_of(std::string_view word, const GeneralLexicon& lex);

}  // namespace senlex
