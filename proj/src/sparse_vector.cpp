#include "cdqa/sparse_vector.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace cdqa {

SparseVector SparseVector::from_sorted(std::vector<SparseEntry> entries) {
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (!(entries[i].weight > 0.0) || !std::isfinite(entries[i].weight)) {
      throw std::invalid_argument("sparse vector weights must be positive and finite");
    }
    if (i > 0 && entries[i - 1].term >= entries[i].term) {
      throw std::invalid_argument("sparse vector term ids must be strictly increasing");
    }
  }
  SparseVector v;
  v.entries_ = std::move(entries);
  return v;
}

SparseVector SparseVector::from_counts(const std::map<TermId, std::uint32_t>& counts,
                                       const std::vector<double>& idf) {
  SparseVector v;
  v.entries_.reserve(counts.size());
  for (const auto& [term, count] : counts) {
    const double w = static_cast<double>(count) * idf.at(term);
    if (w > 0.0) v.entries_.push_back({term, w});
  }
  return v;
}

double SparseVector::norm() const {
  double sum = 0.0;
  for (const auto& e : entries_) sum += e.weight * e.weight;
  return std::sqrt(sum);
}

void SparseVector::normalize() {
  const double n = norm();
  if (n == 0.0) {
    entries_.clear();
    return;
  }
  for (auto& e : entries_) e.weight /= n;
}

double SparseVector::dot(const SparseVector& other) const {
  double sum = 0.0;
  auto a = entries_.begin();
  auto b = other.entries_.begin();
  while (a != entries_.end() && b != other.entries_.end()) {
    if (a->term == b->term) {
      sum += a->weight * b->weight;
      ++a;
      ++b;
    } else if (a->term < b->term) {
      ++a;
    } else {
      ++b;
    }
  }
  return sum;
}

double cosine(const SparseVector& a, const SparseVector& b) {
  if (a.empty() || b.empty()) return 0.0;
  return std::clamp(a.dot(b), 0.0, 1.0);
}

}  // namespace cdqa
