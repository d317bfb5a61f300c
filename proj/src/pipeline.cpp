#include "cdqa/pipeline.hpp"

#include <algorithm>
#include <stdexcept>

namespace cdqa {

ReaderMode parse_reader_mode(std::string_view name) {
  if (name == "lexical") return ReaderMode::kLexical;
  if (name == "external") return ReaderMode::kExternal;
  throw std::invalid_argument("unknown reader_mode '" + std::string(name) + "'");
}

std::string_view to_string(ReaderMode mode) {
  return mode == ReaderMode::kExternal ? "external" : "lexical";
}

void PipelineConfig::validate() const {
  if (top_k_docs < 1) throw std::invalid_argument("top_k_docs must be at least 1");
  if (!(fusion_alpha >= 0.0 && fusion_alpha <= 1.0)) {
    throw std::invalid_argument("fusion_alpha must lie in [0, 1]");
  }
  if (reader_mode == ReaderMode::kExternal) {
    if (!external) throw std::invalid_argument("reader_mode external requires external_reader settings");
    external->validate();
  }
}

PipelineConfig PipelineConfig::from_json(const nlohmann::json& j) {
  PipelineConfig c;
  if (j.contains("top_k_docs")) {
    const auto k = j["top_k_docs"].get<std::int64_t>();
    if (k < 1) throw std::invalid_argument("top_k_docs must be at least 1");
    c.top_k_docs = static_cast<std::size_t>(k);
  }
  c.fusion_alpha = j.value("fusion_alpha", c.fusion_alpha);
  c.no_answer_message = j.value("no_answer_message", c.no_answer_message);
  if (j.contains("reader_mode")) c.reader_mode = parse_reader_mode(j["reader_mode"].get<std::string>());
  return c;
}

nlohmann::json QaResponse::to_json() const {
  return {{"answer", answer}, {"paragraph", paragraph}, {"title", title},
          {"score", score},   {"doc_id", doc_id},       {"degraded", degraded}};
}

double fuse(double alpha, double retriever_score, double reader_score) {
  return std::clamp(alpha * retriever_score + (1.0 - alpha) * reader_score, 0.0, 1.0);
}

PipelineTrace answer_traced(std::string_view question, const KnowledgeBase& kb,
                            const PipelineConfig& config) {
  config.validate();
  PipelineTrace trace;
  trace.response.answer = config.no_answer_message;
  trace.hits = kb.index.retrieve(question, config.top_k_docs);
  if (trace.hits.empty()) return trace;

  std::vector<Paragraph> pool;
  std::vector<std::size_t> rank_of;  // per pooled paragraph
  for (std::size_t r = 0; r < trace.hits.size(); ++r) {
    for (const auto& p : kb.corpus.paragraphs_of(trace.hits[r].doc)) {
      pool.push_back(p);
      rank_of.push_back(r);
    }
  }
  if (pool.empty()) return trace;

  std::vector<AnswerSpan> spans;
  bool degraded = false;
  if (config.reader_mode == ReaderMode::kExternal) {
    auto result = external_read(*config.external, question, pool, kb.index);
    spans = std::move(result.spans);
    degraded = result.degraded;
  } else {
    spans = read(question, pool, kb.index);
  }

  trace.candidates.reserve(spans.size());
  for (std::size_t i = 0; i < spans.size(); ++i) {
    const auto& hit = trace.hits[rank_of[i]];
    Candidate c{rank_of[i], hit.doc, hit.score, std::move(spans[i]), 0.0};
    c.fused = fuse(config.fusion_alpha, c.retriever_score, c.span.reader_score);
    trace.candidates.push_back(std::move(c));
  }
  // Candidates are already in tie-break order, so strict > keeps the earliest.
  std::size_t best = 0;
  for (std::size_t i = 1; i < trace.candidates.size(); ++i) {
    if (trace.candidates[i].fused > trace.candidates[best].fused) best = i;
  }
  trace.response.degraded = degraded;
  const auto& win = trace.candidates[best];
  if (!(win.fused > 0.0)) return trace;

  trace.winner = best;
  const auto& doc = kb.corpus.document(win.doc);
  trace.response.answer = win.span.text;
  trace.response.paragraph = kb.corpus.paragraphs_of(win.doc)[win.span.paragraph_index].text;
  trace.response.title = doc.title;
  trace.response.doc_id = doc.id;
  trace.response.score = win.fused;
  return trace;
}

QaResponse answer(std::string_view question, const KnowledgeBase& kb, const PipelineConfig& config) {
  return answer_traced(question, kb, config).response;
}

}  // namespace cdqa
