#include "cdqa/corpus.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <unordered_set>

#include "cdqa/text.hpp"

namespace cdqa {
namespace fs = std::filesystem;

std::vector<Paragraph> segment_paragraphs(const Document& document) {
  std::vector<Paragraph> out;
  std::string_view text = document.text;
  std::size_t block_start = std::string_view::npos;
  std::size_t block_end = 0;

  auto flush = [&] {
    if (block_start == std::string_view::npos) return;
    const auto body = trim(text.substr(block_start, block_end - block_start));
    if (!body.empty()) {
      out.push_back(Paragraph{document.id, out.size(), std::string(body)});
    }
    block_start = std::string_view::npos;
  };

  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    const auto line = text.substr(pos, nl - pos);
    if (trim(line).empty()) {
      flush();
    } else {
      if (block_start == std::string_view::npos) block_start = pos;
      block_end = nl;
    }
    pos = nl + 1;
  }
  flush();
  return out;
}

Corpus::Corpus(std::vector<Document> documents) : documents_(std::move(documents)) {
  if (documents_.empty()) throw CorpusError("empty corpus");
  first_paragraph_.reserve(documents_.size() + 1);
  for (std::size_t i = 0; i < documents_.size(); ++i) {
    auto& doc = documents_[i];
    if (doc.id.empty()) {
      throw CorpusError("document " + std::to_string(i) + " has an empty id");
    }
    if (!by_id_.emplace(doc.id, i).second) {
      throw CorpusError("duplicate document id '" + doc.id + "'");
    }
    if (doc.title.empty()) doc.title = doc.id;
    first_paragraph_.push_back(paragraphs_.size());
    auto paras = segment_paragraphs(doc);
    std::move(paras.begin(), paras.end(), std::back_inserter(paragraphs_));
  }
  first_paragraph_.push_back(paragraphs_.size());
}

std::optional<std::size_t> Corpus::find(std::string_view id) const {
  const auto it = by_id_.find(std::string(id));
  if (it == by_id_.end()) return std::nullopt;
  return it->second;
}

std::span<const Paragraph> Corpus::paragraphs_of(std::size_t pos) const {
  const auto begin = first_paragraph_.at(pos);
  const auto end = first_paragraph_.at(pos + 1);
  return std::span<const Paragraph>(paragraphs_).subspan(begin, end - begin);
}

nlohmann::json Corpus::to_json() const {
  auto docs = nlohmann::json::array();
  for (const auto& d : documents_) {
    docs.push_back({{"id", d.id}, {"title", d.title}, {"text", d.text}});
  }
  return docs;
}

Corpus Corpus::from_json(const nlohmann::json& j) {
  if (!j.is_array()) throw CorpusError("corpus must be an array of documents");
  std::vector<Document> docs;
  docs.reserve(j.size());
  for (const auto& d : j) {
    if (!d.is_object() || !d.contains("id") || !d.contains("text") ||
        !d["id"].is_string() || !d["text"].is_string()) {
      throw CorpusError("malformed document record in corpus array");
    }
    docs.push_back(Document{d["id"].get<std::string>(), d.value("title", std::string{}),
                            d["text"].get<std::string>()});
  }
  return Corpus(std::move(docs));
}

CorpusFormat parse_corpus_format(std::string_view name) {
  if (name == "jsonl") return CorpusFormat::kJsonl;
  if (name == "text_dir" || name == "text-dir" || name == "dir") return CorpusFormat::kTextDir;
  throw CorpusError("unknown corpus format '" + std::string(name) + "' (expected jsonl or text_dir)");
}

namespace {

Corpus load_jsonl(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CorpusError("cannot open corpus file " + path.string());
  std::vector<Document> docs;
  std::unordered_set<std::string> seen;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const auto where = path.string() + ":" + std::to_string(line_no);
    nlohmann::json rec;
    try {
      rec = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
      throw CorpusError("malformed record at " + where + ": " + e.what());
    }
    if (!rec.is_object()) throw CorpusError("malformed record at " + where + ": not an object");
    for (const char* key : {"id", "text"}) {
      if (!rec.contains(key)) {
        throw CorpusError("malformed record at " + where + ": missing \"" + key + "\"");
      }
      if (!rec[key].is_string()) {
        throw CorpusError("malformed record at " + where + ": \"" + key + "\" must be a string");
      }
    }
    std::string title;
    if (rec.contains("title")) {
      if (!rec["title"].is_string()) {
        throw CorpusError("malformed record at " + where + ": \"title\" must be a string");
      }
      title = rec["title"].get<std::string>();
    }
    auto id = rec["id"].get<std::string>();
    if (id.empty()) throw CorpusError("malformed record at " + where + ": empty \"id\"");
    if (!seen.insert(id).second) {
      throw CorpusError("duplicate document id '" + id + "' at " + where);
    }
    docs.push_back(Document{std::move(id), std::move(title), rec["text"].get<std::string>()});
  }
  if (docs.empty()) throw CorpusError("empty corpus: " + path.string());
  return Corpus(std::move(docs));
}

Corpus load_text_dir(const fs::path& path) {
  if (!fs::is_directory(path)) throw CorpusError("not a directory: " + path.string());
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(path)) {
    if (!entry.is_regular_file()) continue;
    const auto ext = entry.path().extension().string();
    if (ext == ".txt" || ext == ".md") files.push_back(entry.path());
  }
  if (files.empty()) throw CorpusError("empty corpus: no .txt/.md files in " + path.string());
  std::sort(files.begin(), files.end(),
            [](const fs::path& a, const fs::path& b) { return a.filename() < b.filename(); });

  std::vector<Document> docs;
  docs.reserve(files.size());
  for (const auto& f : files) {
    std::ifstream in(f, std::ios::binary);
    if (!in) throw CorpusError("cannot read " + f.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    auto stem = f.stem().string();
    docs.push_back(Document{stem, stem, buf.str()});
  }
  // Corpus rejects duplicate stems such as a.txt next to a.md.
  return Corpus(std::move(docs));
}

}  // namespace

Corpus load_corpus(const fs::path& path, CorpusFormat format) {
  if (!fs::exists(path)) throw CorpusError("corpus path does not exist: " + path.string());
  switch (format) {
    case CorpusFormat::kJsonl:
      return load_jsonl(path);
    case CorpusFormat::kTextDir:
      return load_text_dir(path);
  }
  throw CorpusError("unsupported corpus format");
}

}  // namespace cdqa
