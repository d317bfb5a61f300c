#pragma once

#include <chrono>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "cdqa/corpus.hpp"
#include "cdqa/reader.hpp"
#include "cdqa/retriever.hpp"

namespace cdqa {

/// Where to reach a neural reader speaking the JSON span contract:
///   request  {"question", "paragraphs": [{"doc_id", "paragraph_index", "text"}]}
///   response {"answers": [{"doc_id", "paragraph_index", "char_start",
///                          "char_end", "score"}]}
/// Offsets are byte offsets into the UTF-8 paragraph text.
struct ExternalReaderConfig {
  std::string endpoint;  // http://host[:port]/path
  std::chrono::milliseconds timeout{5000};
  bool fallback_to_lexical = true;

  void validate() const;
  static ExternalReaderConfig from_json(const nlohmann::json& j);
};

class ExternalReaderError : public std::runtime_error {
 public:
  enum class Kind { kUnreachable, kTimeout, kHttpStatus, kSchema };
  ExternalReaderError(Kind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

struct ExternalReadResult {
  std::vector<AnswerSpan> spans;  // one per paragraph, input order
  bool degraded = false;          // some or all spans came from the lexical reader
};

nlohmann::json external_request_body(std::string_view question,
                                     std::span<const Paragraph> paragraphs);

/// Maps a decoded reader response onto spans. Scores are clamped into
/// [0, 1]. A span with out-of-bounds offsets, or empty text with a positive
/// score, is replaced by the lexical span for its paragraph. Throws
/// ExternalReaderError(kSchema) unless there is exactly one well-formed
/// answer per request paragraph.
ExternalReadResult map_external_response(const nlohmann::json& response, std::string_view question,
                                         std::span<const Paragraph> paragraphs,
                                         const TfIdfIndex& index);

/// POSTs to the configured endpoint. On transport errors, timeouts, non-200
/// replies or schema violations it returns the lexical read() with
/// degraded = true when fallback is enabled, and throws otherwise.
ExternalReadResult external_read(const ExternalReaderConfig& config, std::string_view question,
                                 std::span<const Paragraph> paragraphs, const TfIdfIndex& index);

}  // namespace cdqa
