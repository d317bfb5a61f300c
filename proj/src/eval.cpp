#include "cdqa/eval.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

#include "cdqa/text.hpp"

namespace cdqa {
namespace {

std::vector<std::string> normalized_tokens(std::string_view text) {
  auto tokens = tokenize(text);
  std::erase_if(tokens, [](const std::string& t) { return t == "a" || t == "an" || t == "the"; });
  return tokens;
}

}  // namespace

std::vector<GoldExample> load_gold(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open gold file " + path.string());
  std::vector<GoldExample> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const auto where = path.string() + ":" + std::to_string(line_no);
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error&) {
      throw std::runtime_error("malformed gold record at " + where + ": not JSON");
    }
    auto text = [&](const char* key) {
      if (!j.is_object() || !j.contains(key) || !j[key].is_string() || j[key].get<std::string>().empty()) {
        throw std::runtime_error("malformed gold record at " + where + ": \"" + key +
                                 "\" must be a non-empty string");
      }
      return j[key].get<std::string>();
    };
    GoldExample ex{text("question"), text("answer"), std::nullopt};
    if (j.contains("doc_id") && !j["doc_id"].is_null()) ex.doc_id = text("doc_id");
    out.push_back(std::move(ex));
  }
  return out;
}

std::string normalize_answer(std::string_view text) {
  std::string out;
  for (const auto& t : normalized_tokens(text)) {
    if (!out.empty()) out.push_back(' ');
    out += t;
  }
  return out;
}

bool exact_match(std::string_view prediction, std::string_view gold) {
  return normalize_answer(prediction) == normalize_answer(gold);
}

double token_f1(std::string_view prediction, std::string_view gold) {
  const auto pred = normalized_tokens(prediction);
  const auto ref = normalized_tokens(gold);
  if (pred.empty() || ref.empty()) return pred.empty() && ref.empty() ? 1.0 : 0.0;
  std::map<std::string, int> counts;
  for (const auto& t : ref) ++counts[t];
  std::size_t common = 0;
  for (const auto& t : pred) {
    if (auto it = counts.find(t); it != counts.end() && it->second > 0) {
      --it->second;
      ++common;
    }
  }
  if (common == 0) return 0.0;
  const double precision = static_cast<double>(common) / static_cast<double>(pred.size());
  const double recall = static_cast<double>(common) / static_cast<double>(ref.size());
  return 2.0 * precision * recall / (precision + recall);
}

nlohmann::json EvalReport::to_json() const {
  return {{"n", n},   {"exact_match", exact_match}, {"f1", f1},
          {"k", k},   {"n_with_doc", n_with_doc},   {"recall_at_k", recall_at_k}};
}

std::string EvalReport::to_table() const {
  char buf[256];
  std::snprintf(buf, sizeof buf,
                "metric        value\n"
                "examples      %zu\n"
                "exact_match   %.4f\n"
                "f1            %.4f\n"
                "recall@%-5zu  %.4f  (%zu with doc_id)\n",
                n, exact_match, f1, k, recall_at_k, n_with_doc);
  return buf;
}

EvalReport evaluate(const KnowledgeBase& kb, const std::vector<GoldExample>& gold,
                    const PipelineConfig& config, std::size_t k) {
  if (k == 0) throw std::invalid_argument("k must be at least 1");
  EvalReport report;
  report.n = gold.size();
  report.k = k;
  if (gold.empty()) return report;
  double em = 0.0, f1 = 0.0;
  std::size_t found = 0;
  for (const auto& ex : gold) {
    const auto prediction = answer(ex.question, kb, config).answer;
    em += exact_match(prediction, ex.answer) ? 1.0 : 0.0;
    f1 += token_f1(prediction, ex.answer);
    if (ex.doc_id) {
      ++report.n_with_doc;
      const auto hits = kb.index.retrieve(ex.question, k);
      if (std::any_of(hits.begin(), hits.end(), [&](const RetrievalHit& h) { return h.doc_id == *ex.doc_id; })) {
        ++found;
      }
    }
  }
  report.exact_match = em / static_cast<double>(report.n);
  report.f1 = f1 / static_cast<double>(report.n);
  if (report.n_with_doc > 0) {
    report.recall_at_k = static_cast<double>(found) / static_cast<double>(report.n_with_doc);
  }
  return report;
}

}  // namespace cdqa
