#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "rwov/common.hpp"

// Word n-gram count vectorizer with smoothed IDF weighting, the comparison
// baseline for the word-order features.
namespace rwov::ngram {

struct GramRange {
  std::size_t lo = 1;
  std::size_t hi = 1;
  friend bool operator==(const GramRange&, const GramRange&) = default;
};

// (1,2), (2,2), (1,3), (2,3), (3,3).
std::vector<GramRange> standard_presets();

struct Vocabulary {
  std::vector<std::string> grams;    // tokens joined by single spaces, sorted
  std::vector<std::size_t> doc_freq; // parallel to grams
  GramRange range;
  std::size_t n_docs_fit = 0;

  std::size_t size() const { return grams.size(); }
  std::optional<std::size_t> index_of(std::string_view gram) const;
};

// Throws InvalidRange unless 1 <= lo <= hi.
Vocabulary fit(const std::vector<std::vector<std::string>>& docs, GramRange range);

// Multiplicity of each vocabulary gram per document; unseen grams ignored.
Matrix transform(const std::vector<std::vector<std::string>>& docs, const Vocabulary& vocab);

// count * (ln((1 + N) / (1 + df)) + 1), then each row scaled to unit L2 norm.
Matrix idf_weight(const Matrix& counts, const Vocabulary& vocab);
double idf_factor(std::size_t doc_freq, std::size_t n_docs);

// `gram<TAB>doc_freq` per line; header `#range<TAB>lo<TAB>hi<TAB>n_docs`.
std::string serialize_vocabulary(const Vocabulary& vocab);
Vocabulary parse_vocabulary(std::string_view content);

}  // namespace rwov::ngram
