#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "rwov/common.hpp"
#include "rwov/textprep.hpp"

// Relevant word order vectorization: each document becomes a row of signed
// inverse distances between the most frequent words and the term of interest.
namespace rwov::wordorder {

inline constexpr std::size_t kDefaultTopWords = 20;

// Column vocabulary. Counts are non-increasing; equal counts are ordered
// lexicographically.
struct TopWords {
  std::vector<std::string> words;
  std::vector<std::size_t> counts;
  std::string toi;  // canonical TOI token, never a column

  std::size_t size() const { return words.size(); }
  friend bool operator==(const TopWords&, const TopWords&) = default;
};

struct FeatureMatrix {
  std::vector<std::string> row_ids;
  TopWords columns;
  Matrix values;
};

// Counts every token occurrence (not document frequency) across the prepared
// token lists, drops the TOI token and keeps the n most frequent. Throws
// EmptyInput for an empty corpus or n == 0.
TopWords select_top_words(const std::vector<textprep::PreparedDoc>& prepared, std::size_t n,
                          std::string_view toi);

// One row. For every top word w: 0 if w does not occur; otherwise s/(k+1),
// where k is the smallest number of top-word tokens strictly between an
// occurrence of w and a TOI occurrence, and s is -1 when that occurrence of
// w precedes the TOI. When the minimum k is reached both before and after
// the TOI, the occurrence after wins.
std::vector<double> vectorize_doc(const textprep::PreparedDoc& doc, const TopWords& top);

FeatureMatrix transform(const std::vector<textprep::PreparedDoc>& prepared, const TopWords& top);
FeatureMatrix fit_transform(const std::vector<textprep::PreparedDoc>& prepared, std::size_t n,
                            std::string_view toi);

// `word<TAB>count` per line in column order; the first line is `#toi<TAB><token>`.
std::string serialize_top_words(const TopWords& top);
TopWords parse_top_words(std::string_view content);

// Header `doc_id,<word1>,...`; values at 17 significant digits.
std::string matrix_to_csv(const FeatureMatrix& m);

}  // namespace rwov::wordorder
