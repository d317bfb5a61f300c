#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "cdqa/external_reader.hpp"
#include "cdqa/knowledge_base.hpp"
#include "cdqa/reader.hpp"

namespace cdqa {

enum class ReaderMode { kLexical, kExternal };

ReaderMode parse_reader_mode(std::string_view name);
std::string_view to_string(ReaderMode mode);

inline constexpr double kDefaultFusionAlpha = 0.35;
inline constexpr std::string_view kDefaultNoAnswer = "I could not find an answer to that.";

struct PipelineConfig {
  std::size_t top_k_docs = kDefaultTopK;
  double fusion_alpha = kDefaultFusionAlpha;  // weight of the retriever score
  std::string no_answer_message = std::string(kDefaultNoAnswer);
  ReaderMode reader_mode = ReaderMode::kLexical;
  std::optional<ExternalReaderConfig> external;  // required for kExternal

  void validate() const;
  /// Overlays fields present in j onto the defaults.
  static PipelineConfig from_json(const nlohmann::json& j);
};

/// The wire answer. score is the fused retriever/reader value in [0, 1], an
/// approximate confidence rather than a calibrated probability.
struct QaResponse {
  std::string answer;
  std::string paragraph;
  std::string title;
  double score = 0.0;
  std::string doc_id;
  bool degraded = false;

  nlohmann::json to_json() const;
  friend bool operator==(const QaResponse&, const QaResponse&) = default;
};

/// One reader span together with everything that went into its fused score.
struct Candidate {
  std::size_t retrieval_rank = 0;
  std::size_t doc = 0;  // corpus position
  double retriever_score = 0.0;
  AnswerSpan span;
  double fused = 0.0;
};

struct PipelineTrace {
  std::vector<RetrievalHit> hits;
  std::vector<Candidate> candidates;  // retrieval rank, then paragraph order
  std::optional<std::size_t> winner;  // index into candidates
  QaResponse response;
};

/// alpha * retriever + (1 - alpha) * reader, clamped into [0, 1].
double fuse(double alpha, double retriever_score, double reader_score);

/// Retrieve top-k documents, read every paragraph of each, fuse, and return
/// the best candidate. Ties go to the better retrieval rank, then the lower
/// paragraph index. Throws ExternalReaderError only when the external reader
/// fails with fallback disabled.
QaResponse answer(std::string_view question, const KnowledgeBase& kb, const PipelineConfig& config);

/// answer() with its intermediate state exposed.
PipelineTrace answer_traced(std::string_view question, const KnowledgeBase& kb,
                            const PipelineConfig& config);

}  // namespace cdqa
