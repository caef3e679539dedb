#pragma once

#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "rwov/corpus.hpp"

namespace rwov::textprep {

// Boundaries: '.', '!', '?', ';' followed by whitespace or end of text, and
// newlines. A '.' between two digits never ends a sentence. Sentences keep
// their terminator and are trimmed; empty sentences are dropped.
std::vector<std::string> split_sentences(std::string_view text);

// Lowercased maximal runs of ASCII letters and digits.
std::vector<std::string> tokenize(std::string_view sentence);

// Porter (1980) suffix stripping. Tokens containing a digit are returned
// unchanged.
std::string stem(std::string_view token);

std::set<std::string> default_stopwords();
// One word per line, '#' comments.
std::set<std::string> parse_stopwords(std::string_view content);

struct PipelineConfig {
  std::set<std::string> stopwords = default_stopwords();
  std::string toi;                   // single lowercase token, e.g. "er"
  std::vector<std::string> aliases;  // lowercase, may be multiword
  bool stem_toi = false;

  // Token written at every TOI position of a prepared document.
  std::string canonical_toi() const;
};

struct PreparedDoc {
  std::string doc_id;
  std::vector<std::string> tokens;
  std::vector<std::size_t> toi_positions;
  std::size_t source_sentence_index = 0;

  friend bool operator==(const PreparedDoc&, const PreparedDoc&) = default;
};

// Stopword removal; the TOI and single-word aliases are never removed.
std::vector<std::string> filter_stopwords(const std::vector<std::string>& tokens,
                                          const std::set<std::string>& stopwords,
                                          const PipelineConfig* protect = nullptr);

// Front half of the word-order pipeline: first sentence mentioning the TOI
// (or an alias) as whole tokens, alias runs collapsed to the canonical TOI,
// stopwords removed, remaining tokens stemmed. nullopt when no sentence
// mentions the TOI.
std::optional<PreparedDoc> prepare(const corpus::Document& doc, const PipelineConfig& cfg);

// Whole-text variant used by the n-gram baselines' full-text scope: every
// sentence tokenized, filtered and stemmed, concatenated in order.
std::vector<std::string> prepare_full_text(const corpus::Document& doc, const PipelineConfig& cfg);

}  // namespace rwov::textprep
