#include "cdqa/reader.hpp"

#include <cctype>

#include "cdqa/text.hpp"

namespace cdqa {
namespace {

bool is_space(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }

bool is_terminator(char c) { return c == '.' || c == '!' || c == '?'; }

}  // namespace

std::vector<Sentence> split_sentences(std::string_view text) {
  std::vector<Sentence> out;
  auto emit = [&](std::size_t begin, std::size_t end) {
    const auto piece = trim(text.substr(begin, end - begin));
    if (piece.empty()) return;
    const auto start = static_cast<std::size_t>(piece.data() - text.data());
    out.push_back(Sentence{out.size(), start, start + piece.size(), std::string(piece)});
  };

  std::size_t begin = 0;
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (is_terminator(text[i]) && (i + 1 == text.size() || is_space(text[i + 1]))) {
      emit(begin, i + 1);
      begin = i + 1;
    }
  }
  if (begin < text.size()) emit(begin, text.size());
  return out;
}

TermWeights unigram_weights(const TfIdfIndex& index) {
  return [&index](const std::string& term) { return index.idf_of(term).value_or(1.0); };
}

std::set<std::string> question_unigrams(std::string_view question, const TokenizerConfig& config) {
  std::set<std::string> terms;
  for (auto& t : tokenize(question)) {
    if (!config.is_stopword(t)) terms.insert(std::move(t));
  }
  return terms;
}

double score_sentence(const std::set<std::string>& question_terms, const Sentence& sentence,
                      const TermWeights& weights) {
  if (question_terms.empty()) return 0.0;
  const auto tokens = tokenize(sentence.text);
  const std::set<std::string> present(tokens.begin(), tokens.end());
  double total = 0.0;
  double matched = 0.0;
  for (const auto& t : question_terms) {
    const double w = weights(t);
    total += w;
    if (present.count(t) != 0) matched += w;
  }
  if (!(total > 0.0)) return 0.0;
  const double c = matched / total;
  return c > 1.0 ? 1.0 : c;
}

AnswerSpan read_paragraph(const std::set<std::string>& question_terms, const Paragraph& paragraph,
                          const TermWeights& weights) {
  AnswerSpan span{paragraph.doc_id, paragraph.index, 0, 0, {}, 0.0};
  bool first = true;
  for (auto& s : split_sentences(paragraph.text)) {
    const double score = score_sentence(question_terms, s, weights);
    if (first || score > span.reader_score) {
      span.char_start = s.char_start;
      span.char_end = s.char_end;
      span.text = std::move(s.text);
      span.reader_score = score;
      first = false;
    }
  }
  return span;
}

std::vector<AnswerSpan> read(std::string_view question, std::span<const Paragraph> paragraphs,
                             const TfIdfIndex& index) {
  const auto terms = question_unigrams(question, index.tokenizer_config());
  const auto weights = unigram_weights(index);
  std::vector<AnswerSpan> spans;
  spans.reserve(paragraphs.size());
  for (const auto& p : paragraphs) spans.push_back(read_paragraph(terms, p, weights));
  return spans;
}

}  // namespace cdqa
