#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace kgiqa::text {

// A surface token with half-open character offsets into the source text.
struct Token {
    std::string surface;
    std::size_t begin = 0;
    std::size_t end = 0;
    bool is_word = false;  // alphanumeric run; false for punctuation marks
};

// Splits on whitespace; alphanumeric runs (plus apostrophes) become word
// tokens, every other character is a single punctuation token.
std::vector<Token> tokenize(std::string_view text);

std::string to_lower(std::string_view s);

// Coarse tag set used by keyword extraction.
enum class CoarseTag { Noun, Verb, Adj, Other };

// Fallback tagger for untagged input: closed-class lexicon marks function
// words, suffix heuristics catch verb-ish and adjective-ish forms, anything
// else defaults to Noun. Expects a lowercased word.
CoarseTag heuristic_tag(std::string_view word);

// Bundled stopword snapshot (~180 function words), frozen in source.
bool is_stopword(std::string_view lower_word);

// Rule-based lemmatizer: exception table plus suffix stripping. Outputs are
// fixed points (lemma(lemma(w)) == lemma(w)). Expects a lowercased word.
std::string lemma(std::string_view word);

}  // namespace kgiqa::text
