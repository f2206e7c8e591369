#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "senlex/corpus.hpp"

namespace senlex {

/// A phrase as a sequence of case-folded word tokens.
using PhraseTokens = std::vector<std::string>;

PhraseTokens split_phrase(std::string_view phrase);
std::string join_phrase(const PhraseTokens& tokens);

/// Start indices (absolute token positions) of non-overlapping leftmost
/// matches of `phrase` against the folded token stream inside `span`.
std::vector<int> find_phrase(const std::vector<Token>& tokens, TokenSpan span,
                             const PhraseTokens& phrase);

/// True when a negation-tagged token occurs within `window` tokens directly
/// preceding `pos`, without leaving the subsentence span.
bool negated_before(const std::vector<Token>& tokens, TokenSpan subsentence,
                    int pos, int window = 3);

}  // namespace senlex
