#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "cdqa/corpus.hpp"
#include "cdqa/retriever.hpp"

namespace cdqa {

inline constexpr int kSnapshotFormatVersion = 1;
inline constexpr std::string_view kSnapshotFormatName = "cdqa-index";

class SnapshotError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A corpus together with the index built from it. This is the unit the
/// pipeline answers over and the unit persisted as a snapshot file.
struct KnowledgeBase {
  Corpus corpus;
  TfIdfIndex index;

  static KnowledgeBase build(Corpus corpus, TokenizerConfig config = {});
};

/// Serialized snapshot text. Keys are emitted in sorted order so the same
/// knowledge base always yields byte-identical output.
std::string snapshot_to_string(const KnowledgeBase& kb);
KnowledgeBase snapshot_from_string(std::string_view text);

void save_snapshot(const KnowledgeBase& kb, const std::filesystem::path& path);
/// Throws SnapshotError on a missing or corrupt file, a different format
/// version, or an index inconsistent with its corpus.
KnowledgeBase load_snapshot(const std::filesystem::path& path);

}  // namespace cdqa
