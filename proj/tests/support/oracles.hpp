#pragma once

// Brute-force reference implementations used only by tests. They share no
// code with the library paths they check.

#include <algorithm>
#include <cctype>
#include <chrono>
#include <cmath>
#include <cstddef>
#include <filesystem>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

namespace oracle {

/// ASCII-only tokenizer: lowercase alnum runs.
inline std::vector<std::string> ascii_tokens(const std::string& text) {
  std::vector<std::string> out;
  std::string cur;
  for (unsigned char c : text) {
    if (std::isalnum(c) && c < 0x80) {
      cur.push_back(static_cast<char>(std::tolower(c)));
    } else if (!cur.empty()) {
      out.push_back(cur);
      cur.clear();
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

inline std::vector<std::string> uni_bi_terms(const std::string& text) {
  const auto toks = ascii_tokens(text);
  std::vector<std::string> terms = toks;
  for (std::size_t i = 1; i < toks.size(); ++i) terms.push_back(toks[i - 1] + "_" + toks[i]);
  return terms;
}

/// Dense TF-IDF matrix: one row per document over the sorted vocabulary.
struct DenseTfIdf {
  std::vector<std::string> vocab;
  std::map<std::string, std::size_t> column;
  std::vector<double> idf;
  std::vector<std::vector<double>> rows;

  explicit DenseTfIdf(const std::vector<std::string>& docs) {
    std::set<std::string> all;
    std::vector<std::vector<std::string>> doc_terms;
    for (const auto& d : docs) {
      doc_terms.push_back(uni_bi_terms(d));
      all.insert(doc_terms.back().begin(), doc_terms.back().end());
    }
    vocab.assign(all.begin(), all.end());
    for (std::size_t i = 0; i < vocab.size(); ++i) column[vocab[i]] = i;
    const double n = static_cast<double>(docs.size());
    idf.assign(vocab.size(), 0.0);
    for (std::size_t t = 0; t < vocab.size(); ++t) {
      double df = 0;
      for (const auto& terms : doc_terms) {
        if (std::find(terms.begin(), terms.end(), vocab[t]) != terms.end()) df += 1;
      }
      idf[t] = std::log((1 + n) / (1 + df)) + 1;
    }
    for (const auto& terms : doc_terms) rows.push_back(vectorize_terms(terms));
  }

  std::vector<double> vectorize_terms(const std::vector<std::string>& terms) const {
    std::vector<double> row(vocab.size(), 0.0);
    for (const auto& t : terms) {
      auto it = column.find(t);
      if (it != column.end()) row[it->second] += 1.0;
    }
    double norm = 0;
    for (std::size_t i = 0; i < row.size(); ++i) {
      row[i] *= idf[i];
      norm += row[i] * row[i];
    }
    norm = std::sqrt(norm);
    if (norm > 0) {
      for (auto& x : row) x /= norm;
    }
    return row;
  }

  std::vector<double> query(const std::string& q) const { return vectorize_terms(uni_bi_terms(q)); }

  static double dot(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
  }

  /// (doc, score) with score > 0, best first, ties by document order.
  std::vector<std::pair<std::size_t, double>> ranking(const std::string& q) const {
    const auto qv = query(q);
    std::vector<std::pair<std::size_t, double>> out;
    for (std::size_t d = 0; d < rows.size(); ++d) {
      const double s = dot(qv, rows[d]);
      if (s > 0) out.emplace_back(d, s);
    }
    std::stable_sort(out.begin(), out.end(), [](auto& a, auto& b) { return a.second > b.second; });
    return out;
  }
};

/// Sentences as (start, end) byte ranges, trimmed, found by scanning for a
/// terminator followed by whitespace or end.
inline std::vector<std::pair<std::size_t, std::size_t>> sentence_ranges(const std::string& p) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  auto push = [&](std::size_t b, std::size_t e) {
    while (b < e && std::isspace(static_cast<unsigned char>(p[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(p[e - 1]))) --e;
    if (b < e) out.emplace_back(b, e);
  };
  std::size_t b = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const char c = p[i];
    const bool end = i + 1 == p.size() || std::isspace(static_cast<unsigned char>(p[i + 1]));
    if ((c == '.' || c == '!' || c == '?') && end) {
      push(b, i + 1);
      b = i + 1;
    }
  }
  push(b, p.size());
  return out;
}

/// Idf-weighted coverage of question unigrams, OOV weight 1.
inline double coverage(const std::string& question, const std::string& sentence,
                       const std::map<std::string, double>& unigram_idf) {
  const auto q = ascii_tokens(question);
  const std::set<std::string> qs(q.begin(), q.end());
  const auto s = ascii_tokens(sentence);
  const std::set<std::string> ss(s.begin(), s.end());
  double total = 0, hit = 0;
  for (const auto& t : qs) {
    auto it = unigram_idf.find(t);
    const double w = it == unigram_idf.end() ? 1.0 : it->second;
    total += w;
    if (ss.count(t)) hit += w;
  }
  return total > 0 ? hit / total : 0.0;
}

struct NightBooking {
  int room;
  int check_in;   // day number
  int check_out;  // exclusive
  int units;
};

/// For each room: min over nights in [in, out) of free units, by looping
/// every night over every booking.
inline std::vector<int> free_units_per_room(const std::vector<int>& totals,
                                            const std::vector<NightBooking>& bookings, int in, int out) {
  std::vector<int> result;
  for (std::size_t r = 0; r < totals.size(); ++r) {
    int best = totals[r];
    for (int night = in; night < out; ++night) {
      int used = 0;
      for (const auto& b : bookings) {
        if (b.room == static_cast<int>(r) && b.check_in <= night && night < b.check_out) used += b.units;
      }
      best = std::min(best, totals[r] - used);
    }
    result.push_back(best);
  }
  return result;
}

inline std::string random_word(std::mt19937& rng, int vocab) {
  std::uniform_int_distribution<int> pick(0, vocab - 1);
  return "w" + std::to_string(pick(rng));
}

inline std::string random_text(std::mt19937& rng, int max_tokens, int vocab) {
  std::uniform_int_distribution<int> len(0, max_tokens);
  std::string out;
  const int n = len(rng);
  for (int i = 0; i < n; ++i) {
    if (i) out += ' ';
    out += random_word(rng, vocab);
  }
  return out;
}

}  // namespace oracle

namespace testing_support {

inline std::filesystem::path data_dir() { return CDQA_DATA_DIR; }
inline std::filesystem::path fixture_corpus() { return data_dir() / "hospitality_corpus.jsonl"; }
inline std::filesystem::path fixture_gold() { return data_dir() / "hospitality_gold.jsonl"; }

/// Fresh scratch directory removed on destruction.
class TempDir {
 public:
  TempDir() {
    static std::mt19937_64 rng{std::random_device{}()};
    path_ = std::filesystem::temp_directory_path() / ("cdqa-test-" + std::to_string(rng()));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;
  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

 private:
  std::filesystem::path path_;
};

}  // namespace testing_support
