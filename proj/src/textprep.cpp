#include "rwov/textprep.hpp"

#include <algorithm>
#include <sstream>

#include "rwov/common.hpp"

namespace rwov::textprep {

namespace {

bool is_digit(char c) { return c >= '0' && c <= '9'; }
bool is_alnum(char c) { return is_digit(c) || (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z'); }
bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == '\f' || c == '\v'; }

}  // namespace

std::vector<std::string> split_sentences(std::string_view text) {
  std::vector<std::string> out;
  std::size_t start = 0;
  auto emit = [&](std::size_t end) {
    auto s = trim(text.substr(start, end - start));
    if (!s.empty()) out.emplace_back(s);
    start = end;
  };
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (c == '\n') {
      emit(i);
      start = i + 1;
      continue;
    }
    if (c != '.' && c != '!' && c != '?' && c != ';') continue;
    if (c == '.' && i > 0 && i + 1 < text.size() && is_digit(text[i - 1]) && is_digit(text[i + 1])) continue;
    if (i + 1 == text.size() || is_space(text[i + 1])) emit(i + 1);
  }
  emit(text.size());
  return out;
}

std::vector<std::string> tokenize(std::string_view sentence) {
  std::vector<std::string> tokens;
  std::string current;
  for (char c : sentence) {
    if (is_alnum(c)) {
      current += (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c;
    } else if (!current.empty()) {
      tokens.push_back(std::move(current));
      current.clear();
    }
  }
  if (!current.empty()) tokens.push_back(std::move(current));
  return tokens;
}

std::set<std::string> default_stopwords() {
  return {"a",    "an",    "the",   "and",   "or",    "but",  "nor",  "of",    "for",  "in",
          "on",   "at",    "to",    "from",  "by",    "with", "as",   "into",  "onto", "upon",
          "over", "under", "about", "than",  "then",  "is",   "are",  "was",   "were", "be",
          "been", "being", "am",    "this",  "that",  "these", "those", "it",  "its",  "which",
          "who",  "whom",  "there", "their", "has",   "have", "had",  "also",  "per",  "via",
          "so",   "such",  "each",  "if"};
}

std::set<std::string> parse_stopwords(std::string_view content) {
  std::set<std::string> words;
  std::istringstream in{std::string(content)};
  std::string line;
  while (std::getline(in, line)) {
    auto w = trim(line);
    if (w.empty() || w.front() == '#') continue;
    words.insert(to_lower(w));
  }
  return words;
}

std::string PipelineConfig::canonical_toi() const { return stem_toi ? stem(toi) : toi; }

std::vector<std::string> filter_stopwords(const std::vector<std::string>& tokens,
                                          const std::set<std::string>& stopwords,
                                          const PipelineConfig* protect) {
  std::vector<std::string> out;
  out.reserve(tokens.size());
  for (const auto& t : tokens) {
    bool keep = !stopwords.contains(t);
    if (!keep && protect != nullptr) {
      keep = t == protect->toi ||
             std::find(protect->aliases.begin(), protect->aliases.end(), t) != protect->aliases.end();
    }
    if (keep) out.push_back(t);
  }
  return out;
}

namespace {

// Collapses every TOI or alias occurrence to a single marker token at the
// position of its first word. Returns the rewritten tokens and the marker
// positions; longer aliases win over shorter ones at the same start.
struct Localized {
  std::vector<std::string> tokens;
  std::vector<bool> is_toi;
};

std::optional<Localized> localize(const std::vector<std::string>& tokens, const PipelineConfig& cfg) {
  std::vector<std::vector<std::string>> patterns;
  patterns.push_back({cfg.toi});
  for (const auto& alias : cfg.aliases) {
    auto words = tokenize(alias);
    if (!words.empty()) patterns.push_back(std::move(words));
  }
  std::stable_sort(patterns.begin(), patterns.end(),
                   [](const auto& a, const auto& b) { return a.size() > b.size(); });

  Localized out;
  bool found = false;
  for (std::size_t i = 0; i < tokens.size();) {
    std::size_t matched = 0;
    for (const auto& p : patterns) {
      if (i + p.size() <= tokens.size() && std::equal(p.begin(), p.end(), tokens.begin() + static_cast<long>(i))) {
        matched = p.size();
        break;
      }
    }
    if (matched > 0) {
      out.tokens.push_back(cfg.toi);
      out.is_toi.push_back(true);
      found = true;
      i += matched;
    } else {
      out.tokens.push_back(tokens[i]);
      out.is_toi.push_back(false);
      ++i;
    }
  }
  if (!found) return std::nullopt;
  return out;
}

}  // namespace

std::optional<PreparedDoc> prepare(const corpus::Document& doc, const PipelineConfig& cfg) {
  const auto sentences = split_sentences(doc.text);
  const auto canonical = cfg.canonical_toi();
  for (std::size_t s = 0; s < sentences.size(); ++s) {
    auto localized = localize(tokenize(sentences[s]), cfg);
    if (!localized) continue;

    PreparedDoc prepared;
    prepared.doc_id = doc.id;
    prepared.source_sentence_index = s;
    for (std::size_t i = 0; i < localized->tokens.size(); ++i) {
      if (localized->is_toi[i]) {
        prepared.toi_positions.push_back(prepared.tokens.size());
        prepared.tokens.push_back(canonical);
        continue;
      }
      const auto& t = localized->tokens[i];
      if (cfg.stopwords.contains(t)) continue;
      auto stemmed = stem(t);
      // A word that stems onto the TOI token would masquerade as the TOI.
      if (stemmed == canonical) stemmed = t;
      prepared.tokens.push_back(std::move(stemmed));
    }
    return prepared;
  }
  return std::nullopt;
}

std::vector<std::string> prepare_full_text(const corpus::Document& doc, const PipelineConfig& cfg) {
  std::vector<std::string> out;
  const auto canonical = cfg.canonical_toi();
  for (const auto& sentence : split_sentences(doc.text)) {
    auto tokens = tokenize(sentence);
    auto localized = localize(tokens, cfg);
    if (localized) {
      for (std::size_t i = 0; i < localized->tokens.size(); ++i) {
        if (localized->is_toi[i]) out.push_back(canonical);
        else if (!cfg.stopwords.contains(localized->tokens[i])) out.push_back(stem(localized->tokens[i]));
      }
    } else {
      for (const auto& t : filter_stopwords(tokens, cfg.stopwords)) out.push_back(stem(t));
    }
  }
  return out;
}

}  // namespace rwov::textprep
