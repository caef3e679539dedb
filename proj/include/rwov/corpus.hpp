#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace rwov::corpus {

enum class Label { Positive, Negative, Unknown };

std::string_view label_name(Label label);  // "pos" / "neg" / "unk"
std::optional<Label> parse_label(std::string_view text);

// One raw text block with per-TOI binary labels. TOIs absent from `labels`
// are UNKNOWN.
struct Document {
  std::string id;
  std::string text;
  std::map<std::string, Label> labels;

  Label label_for(const std::string& toi) const;

  friend bool operator==(const Document&, const Document&) = default;
};

enum class Format { Jsonl, Csv };

std::optional<Format> parse_format(std::string_view name);

std::vector<Document> load_corpus(const std::string& path, Format format);
std::vector<Document> parse_jsonl(std::string_view content);
// Header `id,text,<TOI>...`; empty label cells mean UNKNOWN.
std::vector<Document> parse_csv(std::string_view content);

std::string to_jsonl(const std::vector<Document>& docs);
std::string to_csv(const std::vector<Document>& docs, const std::vector<std::string>& tois);

struct TemplateSet {
  std::vector<std::string> positive;
  std::vector<std::string> negative;
  std::vector<std::string> positive_noise;
  std::vector<std::string> negative_noise;
};

// Sectioned plain-text bank:
//   [TOI <name> pos]  [TOI <name> neg]  [TOI <name> pos noise]
//   [TOI <name> neg noise]  [distractor]
// one template per line, '#' starts a comment line.
struct TemplateBank {
  std::map<std::string, TemplateSet> tois;
  std::vector<std::string> distractors;

  // Which section of `toi` holds this exact sentence; the label table used
  // to audit generated corpora.
  std::optional<Label> label_of(const std::string& toi, std::string_view sentence) const;
  bool is_noise_variant(const std::string& toi, std::string_view sentence) const;
};

TemplateBank parse_template_bank(std::string_view content);
TemplateBank default_template_bank();
std::string_view default_template_bank_text();

struct CorpusSpec {
  std::size_t n_docs = 300;
  std::map<std::string, double> prevalence;
  double noise_rate = 0.0;
  std::uint64_t seed = 0;
};

// ER 77.5%, PR 63.9%, HER2 14.9% positive.
std::map<std::string, double> table1_prevalence();

std::vector<Document> generate_synthetic(const CorpusSpec& spec, const TemplateBank& bank);

}  // namespace rwov::corpus
