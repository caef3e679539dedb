#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rwov/corpus.hpp"
#include "rwov/experiment.hpp"

namespace rwov::config {

// Sectioned key = value text:
//
//   [corpus]    path, format
//   [toi ER]    token, aliases (comma separated), stem
//   [pipeline]  stopwords (file), top_words, ngram_scope = sentence|full
//   [methods]   list = rwov-nn, rwov-svm, svm(1,2), svm(3,3)
//   [svm]       lambda, epochs, eta0
//   [mlp]       hidden, grid (layouts separated by '|'), grid_search,
//               learning_rate, epochs, batch_size, l2
//   [eval]      folds, bootstrap, level, seed
//   [output]    dir
//
// '#' and ';' start comment lines. Relative paths resolve against the
// directory of the config file.
struct IniFile {
  // section -> ordered key/value pairs
  std::map<std::string, std::vector<std::pair<std::string, std::string>>> sections;
  std::vector<std::string> section_order;

  std::optional<std::string> get(const std::string& section, const std::string& key) const;
};

IniFile parse_ini(std::string_view content);

struct RunConfig {
  std::string corpus_path;
  corpus::Format format = corpus::Format::Jsonl;
  std::vector<experiment::TermOfInterest> tois;  // empty -> defaults
  std::string stopwords_path;
  std::vector<std::string> methods;
  experiment::Settings settings;
  std::optional<std::uint64_t> seed;
  std::string out_dir;
};

// base_dir: directory used to resolve relative paths.
RunConfig parse_run_config(std::string_view content, const std::string& base_dir = "");
RunConfig load_run_config(const std::string& path);

// Fills in defaults (TOIs, stopword file) and enforces the seed requirement.
// Throws InvalidConfig when no seed is available.
void finalize(RunConfig& cfg);

std::vector<std::size_t> parse_layout(std::string_view text);

}  // namespace rwov::config
