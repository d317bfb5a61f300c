#pragma once

#include <cstdint>
#include <map>
#include <vector>

namespace cdqa {

using TermId = std::uint32_t;

struct SparseEntry {
  TermId term = 0;
  double weight = 0.0;
  friend bool operator==(const SparseEntry&, const SparseEntry&) = default;
};

/// Term-weight pairs with strictly increasing term ids and no zero weights.
class SparseVector {
 public:
  SparseVector() = default;

  /// Takes ownership of already sorted entries; throws std::invalid_argument
  /// if ids are not strictly increasing or a weight is not positive.
  static SparseVector from_sorted(std::vector<SparseEntry> entries);

  /// Builds weight(t) = count(t) * idf[t] from an ordered count map.
  static SparseVector from_counts(const std::map<TermId, std::uint32_t>& counts,
                                  const std::vector<double>& idf);

  const std::vector<SparseEntry>& entries() const { return entries_; }
  bool empty() const { return entries_.empty(); }
  std::size_t size() const { return entries_.size(); }

  double norm() const;
  /// Scales to unit L2 norm. Empty vectors stay empty.
  void normalize();
  double dot(const SparseVector& other) const;

  friend bool operator==(const SparseVector&, const SparseVector&) = default;

 private:
  std::vector<SparseEntry> entries_;
};

/// Dot product of two L2-normalized vectors, clamped into [0, 1].
/// Zero when either side is empty.
double cosine(const SparseVector& a, const SparseVector& b);

}  // namespace cdqa
