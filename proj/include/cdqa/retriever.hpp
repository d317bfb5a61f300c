#pragma once

#include <cmath>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include <json.hpp>

#include "cdqa/corpus.hpp"
#include "cdqa/sparse_vector.hpp"
#include "cdqa/text.hpp"

namespace cdqa {

inline constexpr std::size_t kDefaultTopK = 3;

inline double smoothed_idf(std::size_t n_docs, std::size_t df) {
  return std::log((1.0 + static_cast<double>(n_docs)) / (1.0 + static_cast<double>(df))) + 1.0;
}

struct RetrievalHit {
  std::size_t doc = 0;  // position in corpus order
  std::string doc_id;
  double score = 0.0;   // cosine in (0, 1]
};

/// TF-IDF over uni- and bigrams with raw-count tf, smoothed idf
///   idf(t) = ln((1 + N) / (1 + df(t))) + 1
/// and L2-normalized document vectors. Immutable once built.
class TfIdfIndex {
 public:
  static TfIdfIndex build(const Corpus& corpus, TokenizerConfig config = {});

  std::size_t document_count() const { return doc_ids_.size(); }
  std::size_t vocabulary_size() const { return terms_.size(); }
  const TokenizerConfig& tokenizer_config() const { return config_; }

  /// Vocabulary in term-id order (lexicographic).
  const std::vector<std::string>& terms() const { return terms_; }
  std::optional<TermId> term_id(std::string_view term) const;
  std::uint32_t df(TermId id) const { return df_.at(id); }
  double idf(TermId id) const { return idf_.at(id); }
  std::optional<double> idf_of(std::string_view term) const;

  const std::vector<std::string>& doc_ids() const { return doc_ids_; }
  const SparseVector& document_vector(std::size_t doc) const { return doc_vectors_.at(doc); }
  /// Ids of documents that produced no terms at build time.
  const std::vector<std::string>& empty_documents() const { return empty_documents_; }

  /// Same tokenization as documents; out-of-vocabulary terms dropped.
  SparseVector vectorize_query(std::string_view question) const;

  /// Every document with a positive score, best first, ties in corpus order.
  std::vector<RetrievalHit> rank(std::string_view question) const;
  /// The first k entries of rank(). Requires k >= 1.
  std::vector<RetrievalHit> retrieve(std::string_view question, std::size_t k = kDefaultTopK) const;

  nlohmann::json to_json() const;
  /// Throws std::runtime_error when the stored index is inconsistent.
  static TfIdfIndex from_json(const nlohmann::json& j);

 private:
  TfIdfIndex() = default;

  SparseVector weigh(const std::vector<std::string>& terms) const;

  TokenizerConfig config_;
  std::vector<std::string> terms_;
  std::unordered_map<std::string, TermId> term_ids_;
  std::vector<std::uint32_t> df_;
  std::vector<double> idf_;
  std::vector<std::string> doc_ids_;
  std::vector<SparseVector> doc_vectors_;
  std::vector<std::string> empty_documents_;
};

}  // namespace cdqa
