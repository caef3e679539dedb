#include "rwov/config.hpp"

#include <charconv>
#include <filesystem>

#include "rwov/common.hpp"

namespace rwov::config {

std::optional<std::string> IniFile::get(const std::string& section, const std::string& key) const {
  auto it = sections.find(section);
  if (it == sections.end()) return std::nullopt;
  for (const auto& [k, v] : it->second) {
    if (k == key) return v;
  }
  return std::nullopt;
}

IniFile parse_ini(std::string_view content) {
  IniFile ini;
  std::string section;
  std::size_t line_no = 0;
  for (const auto& raw : split(content, '\n')) {
    ++line_no;
    auto line = trim(raw);
    if (line.empty() || line.front() == '#' || line.front() == ';') continue;
    if (line.front() == '[') {
      if (line.back() != ']') throw Error(ErrorCode::InvalidConfig, "bad section header at line " + std::to_string(line_no));
      section = std::string(trim(line.substr(1, line.size() - 2)));
      if (!ini.sections.contains(section)) ini.section_order.push_back(section);
      ini.sections[section];
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw Error(ErrorCode::InvalidConfig, "expected key = value at line " + std::to_string(line_no));
    if (section.empty()) throw Error(ErrorCode::InvalidConfig, "key outside any section at line " + std::to_string(line_no));
    ini.sections[section].emplace_back(std::string(trim(line.substr(0, eq))), std::string(trim(line.substr(eq + 1))));
  }
  return ini;
}

namespace {

template <typename T>
T parse_number(const std::string& text, const std::string& what) {
  T v{};
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || ptr != text.data() + text.size()) {
    throw Error(ErrorCode::InvalidConfig, "bad value '" + text + "' for " + what);
  }
  return v;
}

bool parse_bool(const std::string& text, const std::string& what) {
  const auto v = to_lower(text);
  if (v == "true" || v == "yes" || v == "1" || v == "on") return true;
  if (v == "false" || v == "no" || v == "0" || v == "off") return false;
  throw Error(ErrorCode::InvalidConfig, "bad boolean '" + text + "' for " + what);
}

std::string resolve(const std::string& path, const std::string& base_dir) {
  if (path.empty() || base_dir.empty() || std::filesystem::path(path).is_absolute()) return path;
  return (std::filesystem::path(base_dir) / path).lexically_normal().string();
}

}  // namespace

std::vector<std::size_t> parse_layout(std::string_view text) {
  std::vector<std::size_t> layout;
  std::string cleaned(text);
  for (auto& c : cleaned) {
    if (c == ',') c = ' ';
  }
  for (const auto& part : split(cleaned, ' ')) {
    auto t = std::string(trim(part));
    if (t.empty()) continue;
    layout.push_back(parse_number<std::size_t>(t, "layer width"));
  }
  return layout;
}

RunConfig parse_run_config(std::string_view content, const std::string& base_dir) {
  const auto ini = parse_ini(content);
  RunConfig cfg;
  auto& s = cfg.settings;

  if (auto v = ini.get("corpus", "path")) cfg.corpus_path = resolve(*v, base_dir);
  if (auto v = ini.get("corpus", "format")) {
    auto f = corpus::parse_format(*v);
    if (!f) throw Error(ErrorCode::InvalidConfig, "unknown corpus format '" + *v + "'");
    cfg.format = *f;
  }
  if (auto v = ini.get("pipeline", "stopwords")) cfg.stopwords_path = resolve(*v, base_dir);
  if (auto v = ini.get("pipeline", "top_words")) s.top_words = parse_number<std::size_t>(*v, "top_words");
  if (auto v = ini.get("pipeline", "ngram_scope")) {
    if (*v != "sentence" && *v != "full") throw Error(ErrorCode::InvalidConfig, "ngram_scope must be sentence or full");
    s.ngram_full_text = *v == "full";
  }
  if (auto v = ini.get("methods", "list")) cfg.methods = experiment::split_method_list(*v);

  if (auto v = ini.get("svm", "lambda")) s.svm.lambda = parse_number<double>(*v, "svm.lambda");
  if (auto v = ini.get("svm", "epochs")) s.svm.epochs = parse_number<std::size_t>(*v, "svm.epochs");
  if (auto v = ini.get("svm", "eta0")) s.svm.eta0 = parse_number<double>(*v, "svm.eta0");

  if (auto v = ini.get("mlp", "hidden")) s.mlp_hidden = parse_layout(*v);
  if (auto v = ini.get("mlp", "grid")) {
    s.mlp_grid.clear();
    for (const auto& part : split(*v, '|')) s.mlp_grid.push_back(parse_layout(part));
  }
  if (auto v = ini.get("mlp", "grid_search")) s.grid_search = parse_bool(*v, "mlp.grid_search");
  if (auto v = ini.get("mlp", "learning_rate")) s.mlp.learning_rate = parse_number<double>(*v, "mlp.learning_rate");
  if (auto v = ini.get("mlp", "epochs")) s.mlp.epochs = parse_number<std::size_t>(*v, "mlp.epochs");
  if (auto v = ini.get("mlp", "batch_size")) s.mlp.batch_size = parse_number<std::size_t>(*v, "mlp.batch_size");
  if (auto v = ini.get("mlp", "l2")) s.mlp.l2 = parse_number<double>(*v, "mlp.l2");

  if (auto v = ini.get("eval", "folds")) s.folds = parse_number<std::size_t>(*v, "eval.folds");
  if (auto v = ini.get("eval", "bootstrap")) s.bootstrap = parse_number<std::size_t>(*v, "eval.bootstrap");
  if (auto v = ini.get("eval", "level")) s.level = parse_number<double>(*v, "eval.level");
  if (auto v = ini.get("eval", "seed")) cfg.seed = parse_number<std::uint64_t>(*v, "eval.seed");

  if (auto v = ini.get("output", "dir")) cfg.out_dir = resolve(*v, base_dir);

  for (const auto& name : ini.section_order) {
    if (name.rfind("toi ", 0) != 0) continue;
    experiment::TermOfInterest toi;
    toi.name = std::string(trim(std::string_view(name).substr(4)));
    toi.pipeline.toi = to_lower(ini.get(name, "token").value_or(toi.name));
    if (auto v = ini.get(name, "aliases")) {
      for (const auto& a : split(*v, ',')) {
        auto t = to_lower(trim(a));
        if (!t.empty()) toi.pipeline.aliases.push_back(t);
      }
    }
    if (auto v = ini.get(name, "stem")) toi.pipeline.stem_toi = parse_bool(*v, name + ".stem");
    if (toi.pipeline.toi.empty()) throw Error(ErrorCode::InvalidConfig, "empty token for [" + name + "]");
    cfg.tois.push_back(std::move(toi));
  }
  return cfg;
}

RunConfig load_run_config(const std::string& path) {
  const auto base = std::filesystem::path(path).parent_path().string();
  return parse_run_config(read_file(path), base);
}

void finalize(RunConfig& cfg) {
  auto stopwords = textprep::default_stopwords();
  if (!cfg.stopwords_path.empty()) stopwords = textprep::parse_stopwords(read_file(cfg.stopwords_path));
  if (cfg.tois.empty()) cfg.tois = experiment::default_tois(stopwords);
  else {
    for (auto& t : cfg.tois) t.pipeline.stopwords = stopwords;
  }
  if (!cfg.seed) throw Error(ErrorCode::InvalidConfig, "no seed given (set [eval] seed or pass --seed)");
  cfg.settings.seed = *cfg.seed;
}

}  // namespace rwov::config
