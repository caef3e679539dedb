#include "rwov/wordorder.hpp"

#include <algorithm>
#include <charconv>
#include <limits>
#include <map>
#include <unordered_map>

namespace rwov::wordorder {

TopWords select_top_words(const std::vector<textprep::PreparedDoc>& prepared, std::size_t n,
                          std::string_view toi) {
  if (prepared.empty()) throw Error(ErrorCode::EmptyInput, "no prepared documents for TOI '" + std::string(toi) + "'");
  if (n == 0) throw Error(ErrorCode::EmptyInput, "number of top words must be positive");

  std::map<std::string, std::size_t> counts;
  for (const auto& doc : prepared) {
    for (const auto& t : doc.tokens) {
      if (t != toi) ++counts[t];
    }
  }
  std::vector<std::pair<std::string, std::size_t>> ranked(counts.begin(), counts.end());
  // std::map iteration is already lexicographic, so a stable sort on count
  // yields the lexicographic tie-break.
  std::stable_sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) { return a.second > b.second; });
  if (ranked.size() > n) ranked.resize(n);

  TopWords top;
  top.toi = std::string(toi);
  for (auto& [word, count] : ranked) {
    top.words.push_back(word);
    top.counts.push_back(count);
  }
  return top;
}

std::vector<double> vectorize_doc(const textprep::PreparedDoc& doc, const TopWords& top) {
  if (doc.toi_positions.empty()) {
    throw Error(ErrorCode::EmptyInput, "document '" + doc.doc_id + "' has no TOI position");
  }
  std::unordered_map<std::string_view, std::size_t> column;
  for (std::size_t j = 0; j < top.words.size(); ++j) column.emplace(top.words[j], j);

  // prefix[i] = number of top-word tokens among tokens[0, i).
  const std::size_t len = doc.tokens.size();
  std::vector<std::size_t> prefix(len + 1, 0);
  std::vector<std::vector<std::size_t>> occurrences(top.words.size());
  for (std::size_t i = 0; i < len; ++i) {
    auto it = column.find(doc.tokens[i]);
    const bool is_top = it != column.end() && doc.tokens[i] != top.toi;
    if (is_top) occurrences[it->second].push_back(i);
    prefix[i + 1] = prefix[i] + (is_top ? 1 : 0);
  }

  std::vector<double> row(top.words.size(), 0.0);
  for (std::size_t j = 0; j < top.words.size(); ++j) {
    std::size_t best_k = std::numeric_limits<std::size_t>::max();
    bool best_after = false;
    for (std::size_t pw : occurrences[j]) {
      for (std::size_t pt : doc.toi_positions) {
        const bool after = pw > pt;
        const std::size_t lo = after ? pt : pw;
        const std::size_t hi = after ? pw : pt;
        const std::size_t k = prefix[hi] - prefix[lo + 1];
        if (k < best_k || (k == best_k && after && !best_after)) {
          best_k = k;
          best_after = after;
        }
      }
    }
    if (best_k != std::numeric_limits<std::size_t>::max()) {
      row[j] = (best_after ? 1.0 : -1.0) / static_cast<double>(best_k + 1);
    }
  }
  return row;
}

FeatureMatrix transform(const std::vector<textprep::PreparedDoc>& prepared, const TopWords& top) {
  FeatureMatrix m;
  m.columns = top;
  m.values = Matrix(prepared.size(), top.size());
  m.row_ids.reserve(prepared.size());
  for (std::size_t i = 0; i < prepared.size(); ++i) {
    m.row_ids.push_back(prepared[i].doc_id);
    auto row = vectorize_doc(prepared[i], top);
    std::copy(row.begin(), row.end(), m.values.row(i).begin());
  }
  return m;
}

FeatureMatrix fit_transform(const std::vector<textprep::PreparedDoc>& prepared, std::size_t n,
                            std::string_view toi) {
  return transform(prepared, select_top_words(prepared, n, toi));
}

std::string serialize_top_words(const TopWords& top) {
  std::string out = "#toi\t" + top.toi + "\n";
  for (std::size_t j = 0; j < top.words.size(); ++j) {
    out += top.words[j] + "\t" + std::to_string(top.counts[j]) + "\n";
  }
  return out;
}

TopWords parse_top_words(std::string_view content) {
  TopWords top;
  std::size_t line_no = 0;
  for (const auto& raw : split(content, '\n')) {
    ++line_no;
    auto line = trim(raw);
    if (line.empty()) continue;
    auto fields = split(line, '\t');
    if (fields.size() != 2) {
      throw Error(ErrorCode::MalformedRecord, "top-word line " + std::to_string(line_no) + " needs word<TAB>count");
    }
    if (fields[0] == "#toi") {
      top.toi = fields[1];
      continue;
    }
    std::size_t count = 0;
    auto [ptr, ec] = std::from_chars(fields[1].data(), fields[1].data() + fields[1].size(), count);
    if (ec != std::errc{} || ptr != fields[1].data() + fields[1].size()) {
      throw Error(ErrorCode::MalformedRecord, "bad count at top-word line " + std::to_string(line_no));
    }
    top.words.push_back(fields[0]);
    top.counts.push_back(count);
  }
  return top;
}

std::string matrix_to_csv(const FeatureMatrix& m) {
  std::string out = "doc_id";
  for (const auto& w : m.columns.words) out += "," + w;
  out += '\n';
  for (std::size_t i = 0; i < m.values.rows(); ++i) {
    out += m.row_ids[i];
    for (double v : m.values.row(i)) out += "," + format_double(v);
    out += '\n';
  }
  return out;
}

}  // namespace rwov::wordorder
