#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "cdqa/knowledge_base.hpp"
#include "cdqa/pipeline.hpp"

namespace cdqa {

struct GoldExample {
  std::string question;
  std::string answer;
  std::optional<std::string> doc_id;
};

/// JSONL, one {question, answer, doc_id?} per line. Throws
/// std::runtime_error naming the offending line.
std::vector<GoldExample> load_gold(const std::filesystem::path& path);

/// Lowercase, punctuation to spaces, drop the articles a/an/the, collapse
/// whitespace.
std::string normalize_answer(std::string_view text);

bool exact_match(std::string_view prediction, std::string_view gold);

/// Harmonic mean of precision and recall over normalized token multisets.
/// Two empty answers score 1.
double token_f1(std::string_view prediction, std::string_view gold);

struct EvalReport {
  std::size_t n = 0;
  double exact_match = 0.0;
  double f1 = 0.0;
  std::size_t k = kDefaultTopK;
  std::size_t n_with_doc = 0;  // denominator of recall_at_k
  double recall_at_k = 0.0;

  nlohmann::json to_json() const;
  std::string to_table() const;
};

EvalReport evaluate(const KnowledgeBase& kb, const std::vector<GoldExample>& gold,
                    const PipelineConfig& config, std::size_t k);

}  // namespace cdqa
