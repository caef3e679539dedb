#include "rwov/ngram.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>
#include <set>

namespace rwov::ngram {

std::vector<GramRange> standard_presets() { return {{1, 2}, {2, 2}, {1, 3}, {2, 3}, {3, 3}}; }

std::optional<std::size_t> Vocabulary::index_of(std::string_view gram) const {
  auto it = std::lower_bound(grams.begin(), grams.end(), gram);
  if (it == grams.end() || *it != gram) return std::nullopt;
  return static_cast<std::size_t>(it - grams.begin());
}

namespace {

template <typename Visit>
void for_each_gram(const std::vector<std::string>& tokens, GramRange range, Visit&& visit) {
  for (std::size_t len = range.lo; len <= range.hi; ++len) {
    if (len > tokens.size()) break;
    for (std::size_t start = 0; start + len <= tokens.size(); ++start) {
      std::string gram = tokens[start];
      for (std::size_t k = 1; k < len; ++k) {
        gram += ' ';
        gram += tokens[start + k];
      }
      visit(std::move(gram));
    }
  }
}

}  // namespace

Vocabulary fit(const std::vector<std::vector<std::string>>& docs, GramRange range) {
  if (range.lo < 1 || range.hi < range.lo) {
    throw Error(ErrorCode::InvalidRange,
                "n-gram range (" + std::to_string(range.lo) + "," + std::to_string(range.hi) + ")");
  }
  std::map<std::string, std::size_t> df;
  for (const auto& tokens : docs) {
    std::set<std::string> present;
    for_each_gram(tokens, range, [&](std::string g) { present.insert(std::move(g)); });
    for (const auto& g : present) ++df[g];
  }
  Vocabulary vocab;
  vocab.range = range;
  vocab.n_docs_fit = docs.size();
  for (auto& [g, count] : df) {
    vocab.grams.push_back(g);
    vocab.doc_freq.push_back(count);
  }
  return vocab;
}

Matrix transform(const std::vector<std::vector<std::string>>& docs, const Vocabulary& vocab) {
  Matrix counts(docs.size(), vocab.size());
  for (std::size_t d = 0; d < docs.size(); ++d) {
    for_each_gram(docs[d], vocab.range, [&](std::string g) {
      if (auto idx = vocab.index_of(g)) counts(d, *idx) += 1.0;
    });
  }
  return counts;
}

double idf_factor(std::size_t doc_freq, std::size_t n_docs) {
  return std::log((1.0 + static_cast<double>(n_docs)) / (1.0 + static_cast<double>(doc_freq))) + 1.0;
}

Matrix idf_weight(const Matrix& counts, const Vocabulary& vocab) {
  if (counts.cols() != vocab.size()) {
    throw Error(ErrorCode::DimensionMismatch, "count matrix has " + std::to_string(counts.cols()) +
                                                  " columns, vocabulary " + std::to_string(vocab.size()));
  }
  std::vector<double> factor(vocab.size());
  for (std::size_t g = 0; g < vocab.size(); ++g) factor[g] = idf_factor(vocab.doc_freq[g], vocab.n_docs_fit);

  Matrix out(counts.rows(), counts.cols());
  for (std::size_t d = 0; d < counts.rows(); ++d) {
    double norm2 = 0.0;
    for (std::size_t g = 0; g < counts.cols(); ++g) {
      const double v = counts(d, g) * factor[g];
      out(d, g) = v;
      norm2 += v * v;
    }
    if (norm2 > 0.0) {
      const double inv = 1.0 / std::sqrt(norm2);
      for (auto& v : out.row(d)) v *= inv;
    }
  }
  return out;
}

std::string serialize_vocabulary(const Vocabulary& vocab) {
  std::string out = "#range\t" + std::to_string(vocab.range.lo) + "\t" + std::to_string(vocab.range.hi) + "\t" +
                    std::to_string(vocab.n_docs_fit) + "\n";
  for (std::size_t g = 0; g < vocab.size(); ++g) {
    out += vocab.grams[g] + "\t" + std::to_string(vocab.doc_freq[g]) + "\n";
  }
  return out;
}

namespace {

std::size_t parse_count(const std::string& s, std::size_t line_no) {
  std::size_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) {
    throw Error(ErrorCode::MalformedRecord, "bad integer at vocabulary line " + std::to_string(line_no));
  }
  return v;
}

}  // namespace

Vocabulary parse_vocabulary(std::string_view content) {
  Vocabulary vocab;
  bool have_header = false;
  std::size_t line_no = 0;
  for (const auto& raw : split(content, '\n')) {
    ++line_no;
    auto line = trim(raw);
    if (line.empty()) continue;
    auto fields = split(line, '\t');
    if (!have_header) {
      if (fields.size() != 4 || fields[0] != "#range") {
        throw Error(ErrorCode::MalformedRecord, "vocabulary must start with a #range header");
      }
      vocab.range = {parse_count(fields[1], line_no), parse_count(fields[2], line_no)};
      vocab.n_docs_fit = parse_count(fields[3], line_no);
      have_header = true;
      continue;
    }
    if (fields.size() != 2) throw Error(ErrorCode::MalformedRecord, "vocabulary line " + std::to_string(line_no));
    vocab.grams.push_back(fields[0]);
    vocab.doc_freq.push_back(parse_count(fields[1], line_no));
  }
  if (!std::is_sorted(vocab.grams.begin(), vocab.grams.end())) {
    throw Error(ErrorCode::MalformedRecord, "vocabulary grams are not in lexicographic order");
  }
  return vocab;
}

}  // namespace rwov::ngram
