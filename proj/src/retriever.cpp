#include "cdqa/retriever.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace cdqa {

TfIdfIndex TfIdfIndex::build(const Corpus& corpus, TokenizerConfig config) {
  config.validate();
  TfIdfIndex index;
  index.config_ = std::move(config);

  std::vector<std::map<std::string, std::uint32_t>> doc_counts;
  doc_counts.reserve(corpus.size());
  std::map<std::string, std::uint32_t> df;
  for (const auto& doc : corpus.documents()) {
    std::map<std::string, std::uint32_t> counts;
    for (auto& term : ngram_terms(tokenize(doc.text), index.config_)) ++counts[std::move(term)];
    for (const auto& [term, _] : counts) ++df[term];
    if (counts.empty()) index.empty_documents_.push_back(doc.id);
    index.doc_ids_.push_back(doc.id);
    doc_counts.push_back(std::move(counts));
  }

  const auto n = corpus.size();
  index.terms_.reserve(df.size());
  for (const auto& [term, count] : df) {
    const auto id = static_cast<TermId>(index.terms_.size());
    index.term_ids_.emplace(term, id);
    index.terms_.push_back(term);
    index.df_.push_back(count);
    index.idf_.push_back(smoothed_idf(n, count));
  }

  index.doc_vectors_.reserve(n);
  for (const auto& counts : doc_counts) {
    std::map<TermId, std::uint32_t> by_id;
    for (const auto& [term, c] : counts) by_id.emplace(index.term_ids_.at(term), c);
    auto v = SparseVector::from_counts(by_id, index.idf_);
    v.normalize();
    index.doc_vectors_.push_back(std::move(v));
  }
  return index;
}

std::optional<TermId> TfIdfIndex::term_id(std::string_view term) const {
  const auto it = term_ids_.find(std::string(term));
  if (it == term_ids_.end()) return std::nullopt;
  return it->second;
}

std::optional<double> TfIdfIndex::idf_of(std::string_view term) const {
  if (auto id = term_id(term)) return idf_[*id];
  return std::nullopt;
}

SparseVector TfIdfIndex::weigh(const std::vector<std::string>& terms) const {
  std::map<TermId, std::uint32_t> counts;
  for (const auto& t : terms) {
    if (auto id = term_id(t)) ++counts[*id];
  }
  auto v = SparseVector::from_counts(counts, idf_);
  v.normalize();
  return v;
}

SparseVector TfIdfIndex::vectorize_query(std::string_view question) const {
  return weigh(ngram_terms(tokenize(question), config_));
}

std::vector<RetrievalHit> TfIdfIndex::rank(std::string_view question) const {
  std::vector<RetrievalHit> hits;
  const auto q = vectorize_query(question);
  if (q.empty()) return hits;
  for (std::size_t d = 0; d < doc_vectors_.size(); ++d) {
    const double s = cosine(q, doc_vectors_[d]);
    if (s > 0.0) hits.push_back({d, doc_ids_[d], s});
  }
  std::stable_sort(hits.begin(), hits.end(),
                   [](const RetrievalHit& a, const RetrievalHit& b) { return a.score > b.score; });
  return hits;
}

std::vector<RetrievalHit> TfIdfIndex::retrieve(std::string_view question, std::size_t k) const {
  if (k == 0) throw std::invalid_argument("retrieve: k must be at least 1");
  auto hits = rank(question);
  if (hits.size() > k) hits.resize(k);
  return hits;
}

nlohmann::json TfIdfIndex::to_json() const {
  nlohmann::json j;
  j["tokenizer"] = {{"ngram_max", config_.ngram_max},
                    {"stopwords", std::vector<std::string>(config_.stopwords.begin(),
                                                           config_.stopwords.end())}};
  j["terms"] = terms_;
  j["df"] = df_;
  j["idf"] = idf_;
  j["doc_ids"] = doc_ids_;
  auto vectors = nlohmann::json::array();
  for (const auto& v : doc_vectors_) {
    auto ids = nlohmann::json::array();
    auto weights = nlohmann::json::array();
    for (const auto& e : v.entries()) {
      ids.push_back(e.term);
      weights.push_back(e.weight);
    }
    vectors.push_back({{"terms", std::move(ids)}, {"weights", std::move(weights)}});
  }
  j["doc_vectors"] = std::move(vectors);
  return j;
}

TfIdfIndex TfIdfIndex::from_json(const nlohmann::json& j) {
  TfIdfIndex index;
  const auto& tok = j.at("tokenizer");
  index.config_.ngram_max = tok.at("ngram_max").get<int>();
  for (const auto& s : tok.at("stopwords")) index.config_.stopwords.insert(s.get<std::string>());
  index.config_.validate();

  index.terms_ = j.at("terms").get<std::vector<std::string>>();
  index.df_ = j.at("df").get<std::vector<std::uint32_t>>();
  index.idf_ = j.at("idf").get<std::vector<double>>();
  index.doc_ids_ = j.at("doc_ids").get<std::vector<std::string>>();
  const auto vocab = index.terms_.size();
  const auto n = index.doc_ids_.size();
  if (index.df_.size() != vocab || index.idf_.size() != vocab) {
    throw std::runtime_error("index snapshot: vocabulary tables differ in length");
  }
  for (std::size_t t = 0; t < vocab; ++t) {
    if (index.df_[t] < 1 || index.df_[t] > n || !(index.idf_[t] > 0.0)) {
      throw std::runtime_error("index snapshot: invalid df/idf for term '" + index.terms_[t] + "'");
    }
    if (t > 0 && !(index.terms_[t - 1] < index.terms_[t])) {
      throw std::runtime_error("index snapshot: vocabulary is not sorted");
    }
    index.term_ids_.emplace(index.terms_[t], static_cast<TermId>(t));
  }

  const auto& vectors = j.at("doc_vectors");
  if (vectors.size() != n) throw std::runtime_error("index snapshot: document vector count mismatch");
  for (std::size_t d = 0; d < n; ++d) {
    const auto ids = vectors[d].at("terms").get<std::vector<TermId>>();
    const auto weights = vectors[d].at("weights").get<std::vector<double>>();
    if (ids.size() != weights.size()) throw std::runtime_error("index snapshot: ragged vector");
    std::vector<SparseEntry> entries;
    entries.reserve(ids.size());
    for (std::size_t i = 0; i < ids.size(); ++i) {
      if (ids[i] >= vocab) throw std::runtime_error("index snapshot: term id out of range");
      entries.push_back({ids[i], weights[i]});
    }
    try {
      index.doc_vectors_.push_back(SparseVector::from_sorted(std::move(entries)));
    } catch (const std::invalid_argument& e) {
      throw std::runtime_error(std::string("index snapshot: ") + e.what());
    }
    if (index.doc_vectors_.back().empty()) index.empty_documents_.push_back(index.doc_ids_[d]);
  }
  return index;
}

}  // namespace cdqa
