#pragma once

#include <cstddef>
#include <functional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cdqa/corpus.hpp"
#include "cdqa/retriever.hpp"

namespace cdqa {

struct Sentence {
  std::size_t index = 0;
  std::size_t char_start = 0;  // byte offsets into the paragraph text
  std::size_t char_end = 0;
  std::string text;            // == paragraph.substr(char_start, char_end - char_start)
};

struct AnswerSpan {
  std::string doc_id;
  std::size_t paragraph_index = 0;
  std::size_t char_start = 0;
  std::size_t char_end = 0;
  std::string text;
  double reader_score = 0.0;  // [0, 1]

  friend bool operator==(const AnswerSpan&, const AnswerSpan&) = default;
};

/// Breaks after '.', '!' or '?' when followed by whitespace or end of text.
/// Offsets point at the trimmed sentence.
std::vector<Sentence> split_sentences(std::string_view paragraph_text);

/// Per-term weight lookup used by the sentence scorer.
using TermWeights = std::function<double(const std::string&)>;

/// Unigram idf from the index, 1.0 for out-of-vocabulary terms.
TermWeights unigram_weights(const TfIdfIndex& index);

/// Unique question unigrams with the index's stopwords removed.
std::set<std::string> question_unigrams(std::string_view question, const TokenizerConfig& config);

/// Weighted coverage of the question terms by the sentence:
///   sum idf(t) over matched terms / sum idf(t) over all question terms.
/// Zero for an empty question.
double score_sentence(const std::set<std::string>& question_terms, const Sentence& sentence,
                      const TermWeights& weights);

/// Lexical reader: one span per paragraph, in input order. Each span is the
/// paragraph's best sentence, ties to the earliest.
std::vector<AnswerSpan> read(std::string_view question, std::span<const Paragraph> paragraphs,
                             const TfIdfIndex& index);

/// Single-paragraph form of read().
AnswerSpan read_paragraph(const std::set<std::string>& question_terms, const Paragraph& paragraph,
                          const TermWeights& weights);

}  // namespace cdqa
