#include "cdqa/knowledge_base.hpp"

#include <fstream>
#include <sstream>

namespace cdqa {

KnowledgeBase KnowledgeBase::build(Corpus corpus, TokenizerConfig config) {
  auto index = TfIdfIndex::build(corpus, std::move(config));
  return KnowledgeBase{std::move(corpus), std::move(index)};
}

std::string snapshot_to_string(const KnowledgeBase& kb) {
  nlohmann::json j;
  j["format"] = kSnapshotFormatName;
  j["format_version"] = kSnapshotFormatVersion;
  j["corpus"] = kb.corpus.to_json();
  j["index"] = kb.index.to_json();
  return j.dump() + "\n";
}

KnowledgeBase snapshot_from_string(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw SnapshotError(std::string("corrupt index snapshot: ") + e.what());
  }
  if (!j.is_object() || j.value("format", std::string{}) != kSnapshotFormatName) {
    throw SnapshotError("not an index snapshot");
  }
  const auto version = j.value("format_version", -1);
  if (version != kSnapshotFormatVersion) {
    throw SnapshotError("unsupported snapshot format_version " + std::to_string(version) +
                        " (expected " + std::to_string(kSnapshotFormatVersion) + ")");
  }
  try {
    auto corpus = Corpus::from_json(j.at("corpus"));
    auto index = TfIdfIndex::from_json(j.at("index"));
    if (index.doc_ids().size() != corpus.size()) {
      throw SnapshotError("index snapshot: index and corpus sizes differ");
    }
    for (std::size_t d = 0; d < corpus.size(); ++d) {
      if (index.doc_ids()[d] != corpus.document(d).id) {
        throw SnapshotError("index snapshot: document order differs from corpus");
      }
    }
    return KnowledgeBase{std::move(corpus), std::move(index)};
  } catch (const SnapshotError&) {
    throw;
  } catch (const std::exception& e) {
    throw SnapshotError(std::string("corrupt index snapshot: ") + e.what());
  }
}

void save_snapshot(const KnowledgeBase& kb, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw SnapshotError("cannot write snapshot " + path.string());
  out << snapshot_to_string(kb);
  if (!out) throw SnapshotError("failed writing snapshot " + path.string());
}

KnowledgeBase load_snapshot(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw SnapshotError("cannot open snapshot " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return snapshot_from_string(buf.str());
}

}  // namespace cdqa
