#include <cmath>
#include <limits>

#include "doctest.h"
#include "support.hpp"

#include "rwov/wordorder.hpp"

using namespace rwov;
using namespace rwov::wordorder;
using Tokens = std::vector<std::string>;

namespace {

textprep::PreparedDoc make_doc(const Tokens& tokens, const std::string& toi = "er", const std::string& id = "d") {
  textprep::PreparedDoc d;
  d.doc_id = id;
  d.tokens = tokens;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (tokens[i] == toi) d.toi_positions.push_back(i);
  }
  return d;
}

TopWords top_of(const Tokens& words, const std::string& toi = "er") {
  TopWords t;
  t.words = words;
  t.counts.assign(words.size(), 1);
  t.toi = toi;
  return t;
}

// Enumerates every (word occurrence, TOI occurrence) pair directly.
std::vector<double> brute_force(const Tokens& tokens, const TopWords& top) {
  std::vector<double> row;
  for (const auto& w : top.words) {
    long best_k = std::numeric_limits<long>::max();
    int best_sign = 0;
    for (std::size_t i = 0; i < tokens.size(); ++i) {
      if (tokens[i] != w) continue;
      for (std::size_t j = 0; j < tokens.size(); ++j) {
        if (tokens[j] != top.toi) continue;
        long k = 0;
        for (std::size_t m = std::min(i, j) + 1; m < std::max(i, j); ++m) {
          k += std::find(top.words.begin(), top.words.end(), tokens[m]) != top.words.end() ? 1 : 0;
        }
        const int sign = i < j ? -1 : 1;
        if (k < best_k || (k == best_k && sign > best_sign)) {
          best_k = k;
          best_sign = sign;
        }
      }
    }
    row.push_back(best_sign == 0 ? 0.0 : best_sign / static_cast<double>(best_k + 1));
  }
  return row;
}

}  // namespace

TEST_CASE("top words by occurrence count with lexicographic ties") {
  const std::vector<textprep::PreparedDoc> docs = {make_doc({"posit", "er", "neg", "pr"}),
                                                    make_doc({"neg", "er", "posit", "pr"})};
  const auto top = select_top_words(docs, 2, "er");
  CHECK(top.words == Tokens{"neg", "posit"});
  CHECK(top.counts == std::vector<std::size_t>{2, 2});
  CHECK(select_top_words(docs, 100, "er").words == Tokens{"neg", "posit", "pr"});
}

TEST_CASE("TOI is never a top word") {
  const std::vector<textprep::PreparedDoc> docs = {make_doc({"er", "er", "er", "a", "b", "b"})};
  const auto top = select_top_words(docs, 5, "er");
  CHECK(top.words == Tokens{"b", "a"});
  CHECK(top.toi == "er");
}

TEST_CASE("occurrences, not document frequency, rank words") {
  const std::vector<textprep::PreparedDoc> docs = {make_doc({"x", "x", "x", "er"}), make_doc({"y", "er"}),
                                                    make_doc({"y", "er"})};
  CHECK(select_top_words(docs, 1, "er").words == Tokens{"x"});
}

TEST_CASE("top word errors") {
  CHECK(testing::error_of([] { select_top_words({}, 3, "er"); }) == ErrorCode::EmptyInput);
  CHECK(testing::error_of([] { select_top_words({make_doc({"er"})}, 0, "er"); }) == ErrorCode::EmptyInput);
}

TEST_CASE("hand traced rows") {
  CHECK(vectorize_doc(make_doc({"posit", "er", "neg", "pr"}), top_of({"neg", "posit", "pr"})) ==
        std::vector<double>{1.0, -1.0, 0.5});
  CHECK(vectorize_doc(make_doc({"er", "a", "b", "c"}), top_of({"a", "b", "c"})) ==
        std::vector<double>{1.0, 0.5, 1.0 / 3.0});
  CHECK(vectorize_doc(make_doc({"posit", "er"}), top_of({"neg", "posit"})) == std::vector<double>{0.0, -1.0});
}

TEST_CASE("ties between sides resolve after the TOI") {
  CHECK(vectorize_doc(make_doc({"a", "er", "a"}), top_of({"a"})) == std::vector<double>{1.0});
  CHECK(vectorize_doc(make_doc({"a", "b", "er", "c", "a"}), top_of({"a", "b", "c"})) ==
        std::vector<double>{0.5, -1.0, 1.0});
}

TEST_CASE("nearest occurrence over all TOI mentions wins") {
  CHECK(vectorize_doc(make_doc({"er", "b", "b", "a", "er"}), top_of({"a", "b"})) == std::vector<double>{-1.0, 1.0});
}

TEST_CASE("unseen words never count as intervening") {
  const auto top = top_of({"a", "b"});
  CHECK(vectorize_doc(make_doc({"a", "zzz", "er", "qq", "b"}), top) ==
        vectorize_doc(make_doc({"a", "er", "b"}), top));
  CHECK(vectorize_doc(make_doc({"er", "zzz"}), top) == std::vector<double>{0.0, 0.0});
}

TEST_CASE("brute-force agreement on every short list over four symbols") {
  const Tokens alphabet = {"er", "a", "b", "c"};
  const auto top = top_of({"a", "b", "c"});
  std::size_t lists = 0;
  for (std::size_t len = 1; len <= 8; ++len) {
    std::size_t total = 1;
    for (std::size_t i = 0; i < len; ++i) total *= alphabet.size();
    for (std::size_t code = 0; code < total; ++code) {
      Tokens tokens;
      auto c = code;
      for (std::size_t i = 0; i < len; ++i, c /= alphabet.size()) tokens.push_back(alphabet[c % alphabet.size()]);
      auto doc = make_doc(tokens);
      if (doc.toi_positions.empty()) continue;
      REQUIRE(vectorize_doc(doc, top) == brute_force(tokens, top));
      ++lists;
    }
  }
  CHECK(lists > 50000);
}

TEST_CASE("value law, sign rule and monotone decay on random lists") {
  Rng rng(2024);
  const Tokens vocab = {"a", "b", "c", "d", "e", "f", "g"};
  for (int iter = 0; iter < 3000; ++iter) {
    Tokens tokens;
    const auto len = 1 + rng.below(12);
    for (std::size_t i = 0; i < len; ++i) tokens.push_back(rng.below(4) == 0 ? "er" : vocab[rng.below(vocab.size())]);
    tokens[rng.below(len)] = "er";
    const auto doc = make_doc(tokens);
    const auto top = top_of({"a", "b", "c", "d"});
    const auto row = vectorize_doc(doc, top);
    for (std::size_t j = 0; j < row.size(); ++j) {
      const bool present = std::find(tokens.begin(), tokens.end(), top.words[j]) != tokens.end();
      CHECK((row[j] != 0.0) == present);
      if (row[j] != 0.0) {
        const double k = 1.0 / std::abs(row[j]);
        CHECK(k == std::round(k));
      }
      const auto first_toi = doc.toi_positions.front();
      const auto last_toi = doc.toi_positions.back();
      bool before_only = present, after_only = present;
      for (std::size_t i = 0; i < tokens.size(); ++i) {
        if (tokens[i] != top.words[j]) continue;
        if (i > first_toi) before_only = false;
        if (i < last_toi) after_only = false;
      }
      if (before_only) CHECK(row[j] < 0.0);
      if (after_only) CHECK(row[j] > 0.0);
    }
  }
  // inserting a top word between w and the TOI lowers |value(w)| from 1/(k+1) to 1/(k+2)
  const auto top = top_of({"a", "b", "c"});
  CHECK(vectorize_doc(make_doc({"a", "er"}), top)[0] == -1.0);
  CHECK(vectorize_doc(make_doc({"a", "b", "er"}), top)[0] == -0.5);
  CHECK(vectorize_doc(make_doc({"a", "b", "c", "er"}), top)[0] == -1.0 / 3.0);
}

TEST_CASE("fit_transform composes selection and rows") {
  const std::vector<textprep::PreparedDoc> docs = {make_doc({"a", "er", "b"}, "er", "1"),
                                                    make_doc({"b", "er", "a"}, "er", "2"),
                                                    make_doc({"er", "c"}, "er", "3")};
  const auto fm = fit_transform(docs, 10, "er");
  CHECK(fm.row_ids == Tokens{"1", "2", "3"});
  CHECK(fm.columns.words == Tokens{"a", "b", "c"});
  for (std::size_t r = 0; r < docs.size(); ++r) {
    const auto row = vectorize_doc(docs[r], fm.columns);
    for (std::size_t c = 0; c < row.size(); ++c) CHECK(fm.values(r, c) == row[c]);
  }
  // mirrored order flips signs
  CHECK(fm.values(0, 0) == -fm.values(1, 0));
  CHECK(fm.values(0, 1) == -fm.values(1, 1));
  // a word seen in one document is zero elsewhere
  CHECK(fm.values(0, 2) == 0.0);
  CHECK(fm.values(1, 2) == 0.0);
  const auto again = transform(docs, fm.columns);
  CHECK(again.values == fm.values);
}

TEST_CASE("row permutation permutes the matrix") {
  std::vector<textprep::PreparedDoc> docs = {make_doc({"a", "er", "b", "c"}), make_doc({"c", "er"}),
                                              make_doc({"b", "a", "er"})};
  const auto top = select_top_words(docs, 3, "er");
  const auto m = transform(docs, top);
  std::vector<textprep::PreparedDoc> rev(docs.rbegin(), docs.rend());
  const auto mr = transform(rev, top);
  for (std::size_t r = 0; r < 3; ++r) {
    for (std::size_t c = 0; c < 3; ++c) CHECK(m.values(r, c) == mr.values(2 - r, c));
  }
}

TEST_CASE("doc without top words is an all-zero row") {
  const auto row = vectorize_doc(make_doc({"er", "q"}), top_of({"a", "b"}));
  CHECK(row == std::vector<double>{0.0, 0.0});
}

TEST_CASE("top words and matrix serialization") {
  const std::vector<textprep::PreparedDoc> docs = {make_doc({"a", "er", "b", "c", "b"}, "er", "x1")};
  const auto fm = fit_transform(docs, 3, "er");
  CHECK(parse_top_words(serialize_top_words(fm.columns)) == fm.columns);
  const auto csv = matrix_to_csv(fm);
  CHECK(csv.rfind("doc_id,b,a,c\n", 0) == 0);
  CHECK(csv.find("x1,1,-1,0.5") != std::string::npos);
}
