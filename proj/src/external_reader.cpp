#include "cdqa/external_reader.hpp"

#include <algorithm>
#include <map>
#include <utility>

#include <httplib.h>

namespace cdqa {
namespace {

using Kind = ExternalReaderError::Kind;

struct Endpoint {
  std::string origin;  // scheme://host:port
  std::string path;
};

Endpoint split_endpoint(const std::string& url) {
  const auto scheme_end = url.find("://");
  if (scheme_end == std::string::npos) {
    throw std::invalid_argument("external reader endpoint must be an http:// URL: " + url);
  }
  const auto scheme = url.substr(0, scheme_end);
  if (scheme != "http") {
    throw std::invalid_argument("external reader endpoint must use http: " + url);
  }
  const auto path_start = url.find('/', scheme_end + 3);
  if (path_start == std::string::npos) return {url, "/"};
  return {url.substr(0, path_start), url.substr(path_start)};
}

const nlohmann::json& field(const nlohmann::json& obj, const char* key) {
  if (!obj.is_object() || !obj.contains(key)) {
    throw ExternalReaderError(Kind::kSchema, std::string("reader response: missing \"") + key + "\"");
  }
  return obj[key];
}

std::int64_t integer_field(const nlohmann::json& obj, const char* key) {
  const auto& v = field(obj, key);
  if (!v.is_number_integer()) {
    throw ExternalReaderError(Kind::kSchema, std::string("reader response: \"") + key + "\" must be an integer");
  }
  return v.get<std::int64_t>();
}

}  // namespace

void ExternalReaderConfig::validate() const {
  if (timeout.count() <= 0) throw std::invalid_argument("external reader timeout must be positive");
  split_endpoint(endpoint);
}

ExternalReaderConfig ExternalReaderConfig::from_json(const nlohmann::json& j) {
  ExternalReaderConfig c;
  c.endpoint = j.value("endpoint", std::string{});
  c.timeout = std::chrono::milliseconds(j.value("timeout_ms", 5000));
  c.fallback_to_lexical = j.value("fallback_to_lexical", true);
  return c;
}

nlohmann::json external_request_body(std::string_view question,
                                     std::span<const Paragraph> paragraphs) {
  auto ps = nlohmann::json::array();
  for (const auto& p : paragraphs) {
    ps.push_back({{"doc_id", p.doc_id}, {"paragraph_index", p.index}, {"text", p.text}});
  }
  return {{"question", question}, {"paragraphs", std::move(ps)}};
}

ExternalReadResult map_external_response(const nlohmann::json& response, std::string_view question,
                                         std::span<const Paragraph> paragraphs,
                                         const TfIdfIndex& index) {
  const auto& answers = field(response, "answers");
  if (!answers.is_array()) throw ExternalReaderError(Kind::kSchema, "reader response: \"answers\" must be an array");

  std::map<std::pair<std::string, std::size_t>, std::size_t> slot;
  for (std::size_t i = 0; i < paragraphs.size(); ++i) {
    slot.emplace(std::make_pair(paragraphs[i].doc_id, paragraphs[i].index), i);
  }
  if (answers.size() != paragraphs.size()) {
    throw ExternalReaderError(Kind::kSchema, "reader response: expected " + std::to_string(paragraphs.size()) +
                                                 " answers, got " + std::to_string(answers.size()));
  }

  struct Raw {
    std::int64_t start, end;
    double score;
  };
  std::vector<std::optional<Raw>> raw(paragraphs.size());
  for (const auto& a : answers) {
    const auto& doc = field(a, "doc_id");
    if (!doc.is_string()) throw ExternalReaderError(Kind::kSchema, "reader response: \"doc_id\" must be a string");
    const auto para = integer_field(a, "paragraph_index");
    const auto start = integer_field(a, "char_start");
    const auto end = integer_field(a, "char_end");
    const auto& score = field(a, "score");
    if (!score.is_number()) throw ExternalReaderError(Kind::kSchema, "reader response: \"score\" must be a number");
    if (para < 0) throw ExternalReaderError(Kind::kSchema, "reader response: negative paragraph_index");
    const auto it = slot.find({doc.get<std::string>(), static_cast<std::size_t>(para)});
    if (it == slot.end()) {
      throw ExternalReaderError(Kind::kSchema, "reader response: answer for unknown paragraph " +
                                                   doc.get<std::string>() + "#" + std::to_string(para));
    }
    if (raw[it->second]) {
      throw ExternalReaderError(Kind::kSchema, "reader response: duplicate answer for " + doc.get<std::string>() +
                                                   "#" + std::to_string(para));
    }
    raw[it->second] = Raw{start, end, score.get<double>()};
  }

  ExternalReadResult result;
  result.spans.reserve(paragraphs.size());
  std::optional<std::set<std::string>> terms;
  const auto weights = unigram_weights(index);
  for (std::size_t i = 0; i < paragraphs.size(); ++i) {
    const auto& p = paragraphs[i];
    const auto& r = *raw[i];
    const double score = std::clamp(r.score, 0.0, 1.0);
    const auto len = static_cast<std::int64_t>(p.text.size());
    const bool in_bounds = r.start >= 0 && r.start <= r.end && r.end <= len;
    if (in_bounds && !(score > 0.0 && r.start == r.end)) {
      const auto s = static_cast<std::size_t>(r.start);
      const auto e = static_cast<std::size_t>(r.end);
      result.spans.push_back(AnswerSpan{p.doc_id, p.index, s, e, p.text.substr(s, e - s), score});
    } else {
      if (!terms) terms = question_unigrams(question, index.tokenizer_config());
      result.spans.push_back(read_paragraph(*terms, p, weights));
      result.degraded = true;
    }
  }
  return result;
}

ExternalReadResult external_read(const ExternalReaderConfig& config, std::string_view question,
                                 std::span<const Paragraph> paragraphs, const TfIdfIndex& index) {
  config.validate();
  try {
    const auto endpoint = split_endpoint(config.endpoint);
    httplib::Client client(endpoint.origin);
    const auto ms = config.timeout.count();
    const auto sec = static_cast<time_t>(ms / 1000);
    const auto usec = static_cast<time_t>((ms % 1000) * 1000);
    client.set_connection_timeout(sec, usec);
    client.set_read_timeout(sec, usec);
    client.set_write_timeout(sec, usec);

    const auto body = external_request_body(question, paragraphs).dump();
    auto res = client.Post(endpoint.path, body, "application/json");
    if (!res) {
      const auto err = res.error();
      const bool timed_out = err == httplib::Error::ConnectionTimeout || err == httplib::Error::Read;
      throw ExternalReaderError(timed_out ? Kind::kTimeout : Kind::kUnreachable,
                                "external reader " + config.endpoint + ": " + httplib::to_string(err));
    }
    if (res->status != 200) {
      throw ExternalReaderError(Kind::kHttpStatus, "external reader " + config.endpoint + " returned HTTP " +
                                                       std::to_string(res->status));
    }
    nlohmann::json decoded;
    try {
      decoded = nlohmann::json::parse(res->body);
    } catch (const nlohmann::json::parse_error& e) {
      throw ExternalReaderError(Kind::kSchema, std::string("reader response is not JSON: ") + e.what());
    }
    return map_external_response(decoded, question, paragraphs, index);
  } catch (const ExternalReaderError&) {
    if (!config.fallback_to_lexical) throw;
    return ExternalReadResult{read(question, paragraphs, index), true};
  }
}

}  // namespace cdqa
