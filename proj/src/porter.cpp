// Porter stemmer, following the rule tables of the original 1980 algorithm.

#include <array>
#include <span>
#include <string>
#include <string_view>
#include <utility>

#include "rwov/textprep.hpp"

namespace rwov::textprep {

namespace {

class PorterWord {
 public:
  explicit PorterWord(std::string w) : w_(std::move(w)) {}

  std::string release() { return std::move(w_); }

  bool ends_with(std::string_view suffix) const {
    return w_.size() >= suffix.size() && std::string_view(w_).substr(w_.size() - suffix.size()) == suffix;
  }

  // Measure m of the stem w_[0, len): number of VC sequences.
  int measure(std::size_t len) const {
    int m = 0;
    std::size_t i = 0;
    while (i < len && consonant(i)) ++i;
    while (i < len) {
      while (i < len && !consonant(i)) ++i;
      if (i >= len) break;
      while (i < len && consonant(i)) ++i;
      ++m;
    }
    return m;
  }

  bool has_vowel(std::size_t len) const {
    for (std::size_t i = 0; i < len; ++i) {
      if (!consonant(i)) return true;
    }
    return false;
  }

  bool double_consonant(std::size_t len) const {
    return len >= 2 && w_[len - 1] == w_[len - 2] && consonant(len - 1);
  }

  // *o: stem ends consonant-vowel-consonant, final consonant not w, x or y.
  bool cvc(std::size_t len) const {
    if (len < 3) return false;
    if (!consonant(len - 3) || consonant(len - 2) || !consonant(len - 1)) return false;
    const char c = w_[len - 1];
    return c != 'w' && c != 'x' && c != 'y';
  }

  std::size_t size() const { return w_.size(); }
  char back() const { return w_.back(); }
  char at(std::size_t i) const { return w_[i]; }

  void replace_suffix(std::size_t suffix_len, std::string_view with) {
    w_.resize(w_.size() - suffix_len);
    w_ += with;
  }

 private:
  bool consonant(std::size_t i) const {
    switch (w_[i]) {
      case 'a': case 'e': case 'i': case 'o': case 'u': return false;
      case 'y': return i == 0 || !consonant(i - 1);
      default: return true;
    }
  }

  std::string w_;
};

struct Rule {
  std::string_view suffix;
  std::string_view replacement;
};

// Applies the rule with the longest matching suffix when the remaining stem
// has measure > min_measure. Once a suffix matches, no shorter rule is tried.
void apply_longest(PorterWord& w, std::span<const Rule> rules, int min_measure) {
  const Rule* best = nullptr;
  for (const auto& r : rules) {
    if (w.ends_with(r.suffix) && (best == nullptr || r.suffix.size() > best->suffix.size())) best = &r;
  }
  if (best == nullptr) return;
  const std::size_t stem_len = w.size() - best->suffix.size();
  if (w.measure(stem_len) > min_measure) w.replace_suffix(best->suffix.size(), best->replacement);
}

constexpr std::array<Rule, 20> kStep2 = {{
    {"ational", "ate"}, {"tional", "tion"}, {"enci", "ence"},  {"anci", "ance"},   {"izer", "ize"},
    {"abli", "able"},   {"alli", "al"},     {"entli", "ent"},  {"eli", "e"},       {"ousli", "ous"},
    {"ization", "ize"}, {"ation", "ate"},   {"ator", "ate"},   {"alism", "al"},    {"iveness", "ive"},
    {"fulness", "ful"}, {"ousness", "ous"}, {"aliti", "al"},   {"iviti", "ive"},   {"biliti", "ble"},
}};

constexpr std::array<Rule, 7> kStep3 = {{
    {"icate", "ic"}, {"ative", ""}, {"alize", "al"}, {"iciti", "ic"}, {"ical", "ic"}, {"ful", ""}, {"ness", ""},
}};

void step1a(PorterWord& w) {
  if (w.ends_with("sses")) w.replace_suffix(4, "ss");
  else if (w.ends_with("ies")) w.replace_suffix(3, "i");
  else if (w.ends_with("ss")) return;
  else if (w.ends_with("s")) w.replace_suffix(1, "");
}

void step1b(PorterWord& w) {
  if (w.ends_with("eed")) {
    if (w.measure(w.size() - 3) > 0) w.replace_suffix(3, "ee");
    return;
  }
  std::size_t cut = 0;
  if (w.ends_with("ed") && w.has_vowel(w.size() - 2)) cut = 2;
  else if (w.ends_with("ing") && w.has_vowel(w.size() - 3)) cut = 3;
  if (cut == 0) return;
  w.replace_suffix(cut, "");

  if (w.ends_with("at")) w.replace_suffix(2, "ate");
  else if (w.ends_with("bl")) w.replace_suffix(2, "ble");
  else if (w.ends_with("iz")) w.replace_suffix(2, "ize");
  else if (w.double_consonant(w.size())) {
    const char c = w.back();
    if (c != 'l' && c != 's' && c != 'z') w.replace_suffix(1, "");
  } else if (w.measure(w.size()) == 1 && w.cvc(w.size())) {
    w.replace_suffix(0, "e");
  }
}

void step1c(PorterWord& w) {
  if (w.ends_with("y") && w.has_vowel(w.size() - 1)) w.replace_suffix(1, "i");
}

void step4(PorterWord& w) {
  static constexpr std::array<std::string_view, 19> kSuffixes = {
      "al", "ance", "ence", "er", "ic", "able", "ible", "ant", "ement", "ment",
      "ent", "ion", "ou", "ism", "ate", "iti", "ous", "ive", "ize"};
  std::string_view best;
  for (auto s : kSuffixes) {
    if (w.ends_with(s) && s.size() > best.size()) best = s;
  }
  if (best.empty()) return;
  const std::size_t stem_len = w.size() - best.size();
  if (w.measure(stem_len) <= 1) return;
  if (best == "ion") {
    if (stem_len == 0) return;
    const char c = w.at(stem_len - 1);
    if (c != 's' && c != 't') return;
  }
  w.replace_suffix(best.size(), "");
}

void step5(PorterWord& w) {
  if (w.ends_with("e")) {
    const std::size_t stem_len = w.size() - 1;
    const int m = w.measure(stem_len);
    if (m > 1 || (m == 1 && !w.cvc(stem_len))) w.replace_suffix(1, "");
  }
  if (w.measure(w.size()) > 1 && w.double_consonant(w.size()) && w.back() == 'l') w.replace_suffix(1, "");
}

}  // namespace

std::string stem(std::string_view token) {
  for (char c : token) {
    if (c < 'a' || c > 'z') return std::string(token);
  }
  if (token.empty()) return {};
  PorterWord w{std::string(token)};
  step1a(w);
  step1b(w);
  step1c(w);
  apply_longest(w, kStep2, 0);
  apply_longest(w, kStep3, 0);
  step4(w);
  step5(w);
  return w.release();
}

}  // namespace rwov::textprep
