#include "rwov/corpus.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "json.hpp"

#include "rwov/common.hpp"
#include "template_bank_data.hpp"

namespace rwov::corpus {

std::string_view label_name(Label label) {
  switch (label) {
    case Label::Positive: return "pos";
    case Label::Negative: return "neg";
    case Label::Unknown: return "unk";
  }
  return "unk";
}

std::optional<Label> parse_label(std::string_view text) {
  if (text == "pos") return Label::Positive;
  if (text == "neg") return Label::Negative;
  if (text == "unk" || text.empty()) return Label::Unknown;
  return std::nullopt;
}

Label Document::label_for(const std::string& toi) const {
  auto it = labels.find(toi);
  return it == labels.end() ? Label::Unknown : it->second;
}

std::optional<Format> parse_format(std::string_view name) {
  if (name == "jsonl") return Format::Jsonl;
  if (name == "csv") return Format::Csv;
  return std::nullopt;
}

namespace {

void check_unique(std::set<std::string>& seen, const std::string& id, std::size_t line) {
  if (!seen.insert(id).second) {
    throw Error(ErrorCode::DuplicateId, "id '" + id + "' repeated at line " + std::to_string(line));
  }
}

Label label_or_throw(std::string_view value, std::size_t line) {
  auto label = parse_label(value);
  if (!label) {
    throw Error(ErrorCode::UnknownLabelValue,
                "label '" + std::string(value) + "' at line " + std::to_string(line));
  }
  return *label;
}

// RFC 4180 style: fields may be quoted, quotes doubled inside quoted fields,
// quoted fields may span newlines. Each record carries its starting line.
struct CsvRecord {
  std::size_t line;
  std::vector<std::string> fields;
};

std::vector<CsvRecord> parse_csv_records(std::string_view content) {
  std::vector<CsvRecord> records;
  std::size_t line = 1;
  std::size_t i = 0;
  while (i < content.size()) {
    CsvRecord rec{line, {}};
    std::string field;
    bool in_quotes = false;
    bool field_was_quoted = false;
    bool ended = false;
    while (i < content.size() && !ended) {
      char c = content[i];
      if (in_quotes) {
        if (c == '"') {
          if (i + 1 < content.size() && content[i + 1] == '"') {
            field += '"';
            i += 2;
            continue;
          }
          in_quotes = false;
        } else {
          if (c == '\n') ++line;
          field += c;
        }
        ++i;
        continue;
      }
      if (c == '"' && field.empty() && !field_was_quoted) {
        in_quotes = true;
        field_was_quoted = true;
      } else if (c == ',') {
        rec.fields.push_back(std::move(field));
        field.clear();
        field_was_quoted = false;
      } else if (c == '\n') {
        ++line;
        ended = true;
      } else if (c != '\r') {
        field += c;
      }
      ++i;
    }
    if (in_quotes) {
      throw Error(ErrorCode::MalformedRecord,
                  "unterminated quoted field starting at line " + std::to_string(rec.line));
    }
    rec.fields.push_back(std::move(field));
    if (!(rec.fields.size() == 1 && rec.fields[0].empty())) records.push_back(std::move(rec));
  }
  return records;
}

std::string csv_quote(std::string_view s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

}  // namespace

std::vector<Document> parse_jsonl(std::string_view content) {
  std::vector<Document> docs;
  std::set<std::string> seen;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start < content.size()) {
    ++line_no;
    auto end = content.find('\n', start);
    if (end == std::string_view::npos) end = content.size();
    auto line = trim(content.substr(start, end - start));
    start = end + 1;
    if (line.empty()) continue;

    const auto where = " at line " + std::to_string(line_no);
    nlohmann::json obj;
    try {
      obj = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
      throw Error(ErrorCode::MalformedRecord, std::string("invalid JSON") + where);
    }
    if (!obj.is_object()) throw Error(ErrorCode::MalformedRecord, "record is not an object" + where);
    if (!obj.contains("id") || !obj["id"].is_string() || obj["id"].get<std::string>().empty()) {
      throw Error(ErrorCode::MalformedRecord, "missing or empty \"id\"" + where);
    }
    if (!obj.contains("text") || !obj["text"].is_string() || obj["text"].get<std::string>().empty()) {
      throw Error(ErrorCode::MalformedRecord, "missing or empty \"text\"" + where);
    }
    Document doc;
    doc.id = obj["id"].get<std::string>();
    doc.text = obj["text"].get<std::string>();
    check_unique(seen, doc.id, line_no);
    if (obj.contains("labels")) {
      const auto& labels = obj["labels"];
      if (!labels.is_object()) throw Error(ErrorCode::MalformedRecord, "\"labels\" is not an object" + where);
      for (const auto& [toi, value] : labels.items()) {
        if (!value.is_string()) throw Error(ErrorCode::MalformedRecord, "label for " + toi + " is not a string" + where);
        doc.labels[toi] = label_or_throw(value.get<std::string>(), line_no);
      }
    }
    docs.push_back(std::move(doc));
  }
  return docs;
}

std::vector<Document> parse_csv(std::string_view content) {
  auto records = parse_csv_records(content);
  std::vector<Document> docs;
  if (records.empty()) return docs;
  const auto& header = records.front().fields;
  if (header.size() < 2 || trim(header[0]) != "id" || trim(header[1]) != "text") {
    throw Error(ErrorCode::MalformedRecord, "CSV header must start with id,text at line 1");
  }
  std::set<std::string> seen;
  for (std::size_t r = 1; r < records.size(); ++r) {
    const auto& rec = records[r];
    const auto where = " at line " + std::to_string(rec.line);
    if (rec.fields.size() != header.size()) {
      throw Error(ErrorCode::MalformedRecord, "expected " + std::to_string(header.size()) + " fields" + where);
    }
    Document doc;
    doc.id = std::string(trim(rec.fields[0]));
    doc.text = rec.fields[1];
    if (doc.id.empty()) throw Error(ErrorCode::MalformedRecord, "empty id" + where);
    if (doc.text.empty()) throw Error(ErrorCode::MalformedRecord, "empty text" + where);
    check_unique(seen, doc.id, rec.line);
    for (std::size_t c = 2; c < header.size(); ++c) {
      auto value = trim(rec.fields[c]);
      if (value.empty()) continue;
      doc.labels[std::string(trim(header[c]))] = label_or_throw(value, rec.line);
    }
    docs.push_back(std::move(doc));
  }
  return docs;
}

std::vector<Document> load_corpus(const std::string& path, Format format) {
  const auto content = read_file(path);
  return format == Format::Jsonl ? parse_jsonl(content) : parse_csv(content);
}

std::string to_jsonl(const std::vector<Document>& docs) {
  std::string out;
  for (const auto& doc : docs) {
    nlohmann::ordered_json obj;
    obj["id"] = doc.id;
    obj["text"] = doc.text;
    nlohmann::ordered_json labels = nlohmann::ordered_json::object();
    for (const auto& [toi, label] : doc.labels) labels[toi] = std::string(label_name(label));
    obj["labels"] = std::move(labels);
    out += obj.dump();
    out += '\n';
  }
  return out;
}

std::string to_csv(const std::vector<Document>& docs, const std::vector<std::string>& tois) {
  std::string out = "id,text";
  for (const auto& toi : tois) out += "," + toi;
  out += '\n';
  for (const auto& doc : docs) {
    out += csv_quote(doc.id) + "," + csv_quote(doc.text);
    for (const auto& toi : tois) {
      auto label = doc.label_for(toi);
      out += ",";
      if (label != Label::Unknown) out += label_name(label);
    }
    out += '\n';
  }
  return out;
}

std::optional<Label> TemplateBank::label_of(const std::string& toi, std::string_view sentence) const {
  auto it = tois.find(toi);
  if (it == tois.end()) return std::nullopt;
  auto contains = [&](const std::vector<std::string>& v) {
    return std::find(v.begin(), v.end(), sentence) != v.end();
  };
  const bool pos = contains(it->second.positive);
  const bool neg = contains(it->second.negative);
  if (pos == neg) return std::nullopt;
  return pos ? Label::Positive : Label::Negative;
}

bool TemplateBank::is_noise_variant(const std::string& toi, std::string_view sentence) const {
  auto it = tois.find(toi);
  if (it == tois.end()) return false;
  const auto& s = it->second;
  return std::find(s.positive_noise.begin(), s.positive_noise.end(), sentence) != s.positive_noise.end() ||
         std::find(s.negative_noise.begin(), s.negative_noise.end(), sentence) != s.negative_noise.end();
}

TemplateBank parse_template_bank(std::string_view content) {
  TemplateBank bank;
  std::vector<std::string>* current = nullptr;
  std::size_t line_no = 0;
  std::istringstream in{std::string(content)};
  std::string raw;
  while (std::getline(in, raw)) {
    ++line_no;
    auto line = trim(raw);
    if (line.empty() || line.front() == '#') continue;
    if (line.front() == '[') {
      if (line.back() != ']') {
        throw Error(ErrorCode::MalformedRecord, "unterminated section header at line " + std::to_string(line_no));
      }
      std::istringstream header{std::string(line.substr(1, line.size() - 2))};
      std::vector<std::string> parts;
      for (std::string w; header >> w;) parts.push_back(w);
      if (parts.size() == 1 && parts[0] == "distractor") {
        current = &bank.distractors;
      } else if (parts.size() >= 3 && parts.size() <= 4 && parts[0] == "TOI" &&
                 (parts[2] == "pos" || parts[2] == "neg") && (parts.size() == 3 || parts[3] == "noise")) {
        auto& set = bank.tois[parts[1]];
        const bool noise = parts.size() == 4;
        if (parts[2] == "pos") current = noise ? &set.positive_noise : &set.positive;
        else current = noise ? &set.negative_noise : &set.negative;
      } else {
        throw Error(ErrorCode::MalformedRecord, "unknown section '" + std::string(line) + "' at line " +
                                                    std::to_string(line_no));
      }
      continue;
    }
    if (current == nullptr) {
      throw Error(ErrorCode::MalformedRecord, "template outside any section at line " + std::to_string(line_no));
    }
    current->emplace_back(line);
  }
  return bank;
}

std::string_view default_template_bank_text() { return kDefaultTemplateBank; }

TemplateBank default_template_bank() { return parse_template_bank(kDefaultTemplateBank); }

std::map<std::string, double> table1_prevalence() {
  return {{"ER", 0.775}, {"PR", 0.639}, {"HER2", 0.149}};
}

namespace {

std::string with_terminator(const std::string& sentence) {
  const char last = sentence.empty() ? '\0' : sentence.back();
  if (last == '.' || last == '!' || last == '?') return sentence;
  return sentence + ".";
}

std::vector<bool> flags_with_count(std::size_t n, std::size_t count, Rng& rng) {
  std::vector<bool> flags(n, false);
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  rng.shuffle(order);
  for (std::size_t i = 0; i < count && i < n; ++i) flags[order[i]] = true;
  return flags;
}

const std::string& pick(const std::vector<std::string>& options, Rng& rng) {
  return options[static_cast<std::size_t>(rng.below(options.size()))];
}

}  // namespace

std::vector<Document> generate_synthetic(const CorpusSpec& spec, const TemplateBank& bank) {
  if (spec.n_docs < 2) {
    throw Error(ErrorCode::InvalidPrevalence, "n_docs must be at least 2, got " + std::to_string(spec.n_docs));
  }
  if (!(spec.noise_rate >= 0.0 && spec.noise_rate < 1.0)) {
    throw Error(ErrorCode::InvalidPrevalence, "noise_rate must lie in [0,1)");
  }
  if (spec.prevalence.empty()) throw Error(ErrorCode::InvalidPrevalence, "no TOI prevalences given");
  for (const auto& [toi, p] : spec.prevalence) {
    if (!(p >= 0.0 && p <= 1.0)) {
      throw Error(ErrorCode::InvalidPrevalence, "prevalence for " + toi + " outside [0,1]");
    }
    auto it = bank.tois.find(toi);
    if (it == bank.tois.end() || it->second.positive.empty() || it->second.negative.empty()) {
      throw Error(ErrorCode::EmptyTemplateBank, "no pos/neg templates for TOI " + toi);
    }
    if (spec.noise_rate > 0.0 && (it->second.positive_noise.empty() || it->second.negative_noise.empty())) {
      throw Error(ErrorCode::EmptyTemplateBank, "no noise variants for TOI " + toi);
    }
  }
  if (bank.distractors.empty()) throw Error(ErrorCode::EmptyTemplateBank, "no distractor sentences");

  const std::size_t n = spec.n_docs;
  std::map<std::string, std::vector<bool>> positive;
  std::map<std::string, std::vector<bool>> noisy;
  for (const auto& [toi, p] : spec.prevalence) {
    Rng label_rng(derive_seed(spec.seed, "synth/labels/" + toi));
    const auto n_pos = static_cast<std::size_t>(std::llround(p * static_cast<double>(n)));
    positive[toi] = flags_with_count(n, n_pos, label_rng);
    Rng noise_rng(derive_seed(spec.seed, "synth/noise/" + toi));
    const auto n_noisy = static_cast<std::size_t>(std::llround(spec.noise_rate * static_cast<double>(n)));
    noisy[toi] = flags_with_count(n, n_noisy, noise_rng);
  }

  Rng text_rng(derive_seed(spec.seed, "synth/text"));
  const int width = static_cast<int>(std::to_string(n).size());
  std::vector<Document> docs;
  docs.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    Document doc;
    auto num = std::to_string(i + 1);
    doc.id = "synth-" + std::string(static_cast<std::size_t>(width) - num.size(), '0') + num;

    std::vector<std::string> sentences;
    const auto n_distractors = 2 + static_cast<std::size_t>(text_rng.below(5));
    std::vector<std::size_t> pool(bank.distractors.size());
    for (std::size_t k = 0; k < pool.size(); ++k) pool[k] = k;
    text_rng.shuffle(pool);
    for (std::size_t k = 0; k < n_distractors; ++k) {
      sentences.push_back(with_terminator(bank.distractors[pool[k % pool.size()]]));
    }
    for (const auto& [toi, p] : spec.prevalence) {
      const auto& set = bank.tois.at(toi);
      const bool pos = positive[toi][i];
      const bool noise = noisy[toi][i];
      doc.labels[toi] = pos ? Label::Positive : Label::Negative;
      const auto& options = noise ? (pos ? set.positive_noise : set.negative_noise)
                                  : (pos ? set.positive : set.negative);
      sentences.push_back(with_terminator(pick(options, text_rng)));
    }
    text_rng.shuffle(sentences);

    for (std::size_t k = 0; k < sentences.size(); ++k) {
      if (k) doc.text += ' ';
      doc.text += sentences[k];
    }
    docs.push_back(std::move(doc));
  }
  return docs;
}

}  // namespace rwov::corpus
