#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include <json.hpp>

namespace cdqa {

struct Document {
  std::string id;
  std::string title;  // defaults to id
  std::string text;
};

struct Paragraph {
  std::string doc_id;
  std::size_t index = 0;  // ordinal within its document
  std::string text;       // trimmed, non-empty
};

/// Thrown for anything that prevents a corpus from loading. Loads are
/// all-or-nothing.
class CorpusError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Splits on runs of blank lines, trims each block and drops empty ones.
std::vector<Paragraph> segment_paragraphs(const Document& document);

/// Immutable document collection with its derived paragraphs.
class Corpus {
 public:
  /// Validates ids (non-empty, unique), defaults titles and segments every
  /// document. Throws CorpusError on an empty list or invalid ids.
  explicit Corpus(std::vector<Document> documents);

  const std::vector<Document>& documents() const { return documents_; }
  const std::vector<Paragraph>& paragraphs() const { return paragraphs_; }
  std::size_t size() const { return documents_.size(); }

  /// Position of a document in corpus order.
  std::optional<std::size_t> find(std::string_view id) const;
  const Document& document(std::size_t pos) const { return documents_.at(pos); }
  std::span<const Paragraph> paragraphs_of(std::size_t pos) const;

  nlohmann::json to_json() const;
  static Corpus from_json(const nlohmann::json& j);

 private:
  std::vector<Document> documents_;
  std::vector<Paragraph> paragraphs_;
  std::vector<std::size_t> first_paragraph_;  // size = documents + 1
  std::unordered_map<std::string, std::size_t> by_id_;
};

enum class CorpusFormat { kJsonl, kTextDir };

CorpusFormat parse_corpus_format(std::string_view name);

/// Reads a JSONL file (one {id, title?, text} object per line, blank lines
/// ignored) or a directory of .txt/.md files ordered by filename.
Corpus load_corpus(const std::filesystem::path& path, CorpusFormat format);

}  // namespace cdqa
