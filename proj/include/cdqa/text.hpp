#pragma once

#include <cstddef>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace cdqa {

/// Joins the two members of a bigram term. Tokens never contain it because
/// tokenization splits on every non-alphanumeric code point.
inline constexpr std::string_view kBigramJoiner = "_";

struct TokenizerConfig {
  int ngram_max = 2;                 // 1 = unigrams only, 2 = uni + bigrams
  std::set<std::string> stopwords;   // unigrams, already lowercase

  void validate() const;
  bool is_stopword(const std::string& token) const {
    return stopwords.find(token) != stopwords.end();
  }
  friend bool operator==(const TokenizerConfig&, const TokenizerConfig&) = default;
};

/// Lowercases and splits on every non-alphanumeric code point. Digits are
/// kept. Input is treated as UTF-8; invalid bytes act as separators.
std::vector<std::string> tokenize(std::string_view text);

/// All unigrams (minus stopwords) followed by adjacent-pair bigrams formed
/// over the unfiltered sequence. A bigram survives only if neither member is
/// a stopword. Duplicates are preserved.
std::vector<std::string> ngram_terms(const std::vector<std::string>& tokens,
                                     const TokenizerConfig& config);

std::string_view trim(std::string_view s);

}  // namespace cdqa
