#include "cli.hpp"

#include <filesystem>
#include <optional>
#include <ostream>

#include "CLI11.hpp"

#include "rwov/common.hpp"
#include "rwov/config.hpp"
#include "rwov/corpus.hpp"
#include "rwov/experiment.hpp"
#include "rwov/wordorder.hpp"

namespace rwov::cli {

namespace {

namespace fs = std::filesystem;

struct GlobalOptions {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::string out_dir;
  std::string format;
  std::string corpus_path;
  std::string methods;
};

config::RunConfig resolve_config(const GlobalOptions& g) {
  config::RunConfig cfg = g.config_path.empty() ? config::RunConfig{} : config::load_run_config(g.config_path);
  if (g.seed) cfg.seed = g.seed;
  if (!g.out_dir.empty()) cfg.out_dir = g.out_dir;
  if (!g.corpus_path.empty()) cfg.corpus_path = g.corpus_path;
  if (!g.format.empty()) {
    auto f = corpus::parse_format(g.format);
    if (!f) throw Error(ErrorCode::InvalidConfig, "unknown format '" + g.format + "'");
    cfg.format = *f;
  }
  if (!g.methods.empty()) cfg.methods = experiment::split_method_list(g.methods);
  if (cfg.out_dir.empty()) cfg.out_dir = ".";
  config::finalize(cfg);
  return cfg;
}

std::vector<corpus::Document> load_docs(const config::RunConfig& cfg) {
  if (cfg.corpus_path.empty()) throw Error(ErrorCode::InvalidConfig, "no corpus path (set [corpus] path or --corpus)");
  return corpus::load_corpus(cfg.corpus_path, cfg.format);
}

std::string out_path(const config::RunConfig& cfg, const std::string& name) {
  return (fs::path(cfg.out_dir) / name).string();
}

const experiment::TermOfInterest& find_toi(const config::RunConfig& cfg, const std::string& name) {
  for (const auto& t : cfg.tois) {
    if (t.name == name) return t;
  }
  throw Error(ErrorCode::InvalidConfig, "TOI '" + name + "' is not configured");
}

struct SynthOptions {
  std::string preset;
  std::size_t n = 300;
  double noise = 0.0;
  std::vector<std::string> prevalence;
  std::string templates;
  std::string file;
};

int cmd_synth(const GlobalOptions& g, const SynthOptions& o, std::ostream& out) {
  corpus::CorpusSpec spec;
  spec.n_docs = o.n;
  spec.noise_rate = o.noise;
  if (!g.seed) throw Error(ErrorCode::InvalidConfig, "synth requires --seed");
  spec.seed = *g.seed;
  if (o.preset == "table1") spec.prevalence = corpus::table1_prevalence();
  else if (!o.preset.empty()) throw Error(ErrorCode::InvalidConfig, "unknown preset '" + o.preset + "'");
  for (const auto& item : o.prevalence) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw Error(ErrorCode::InvalidConfig, "--prevalence expects TOI=fraction");
    double p = 0.0;
    try {
      std::size_t used = 0;
      p = std::stod(item.substr(eq + 1), &used);
      if (used != item.size() - eq - 1) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
      throw Error(ErrorCode::InvalidPrevalence, "bad fraction in '" + item + "'");
    }
    spec.prevalence[item.substr(0, eq)] = p;
  }
  const auto bank = o.templates.empty() ? corpus::default_template_bank()
                                        : corpus::parse_template_bank(read_file(o.templates));
  const auto docs = corpus::generate_synthetic(spec, bank);

  const auto format = g.format.empty() ? corpus::Format::Jsonl : *corpus::parse_format(g.format);
  std::string path = o.file;
  if (path.empty()) {
    path = (fs::path(g.out_dir.empty() ? "." : g.out_dir) /
            (format == corpus::Format::Jsonl ? "corpus.jsonl" : "corpus.csv"))
               .string();
  }
  std::vector<std::string> tois;
  for (const auto& [toi, p] : spec.prevalence) tois.push_back(toi);
  write_file_atomic(path, format == corpus::Format::Jsonl ? corpus::to_jsonl(docs) : corpus::to_csv(docs, tois));

  out << "wrote " << docs.size() << " documents to " << path << "\n";
  for (const auto& toi : tois) {
    std::size_t pos = 0;
    for (const auto& d : docs) pos += d.label_for(toi) == corpus::Label::Positive ? 1 : 0;
    out << toi << ": " << pos << " positive (" << format_fixed(100.0 * static_cast<double>(pos) / static_cast<double>(docs.size()), 1)
        << "%)\n";
  }
  return 0;
}

int cmd_vectorize(const GlobalOptions& g, std::ostream& out) {
  const auto cfg = resolve_config(g);
  const auto docs = load_docs(cfg);
  for (const auto& toi : cfg.tois) {
    const auto task = experiment::build_task(docs, toi, cfg.settings);
    out << toi.name << ": " << task.prepared.size() << " documents, " << task.excluded_not_found
        << " excluded (TOI not mentioned), " << task.excluded_unknown << " excluded (label unknown)\n";
    if (task.prepared.empty()) {
      throw Error(ErrorCode::EmptyInput, "no labeled document mentions TOI '" + toi.pipeline.toi + "' (" + toi.name + ")");
    }
    const auto fm = wordorder::fit_transform(task.prepared, cfg.settings.top_words, task.toi_token);
    write_file_atomic(out_path(cfg, toi.name + ".topwords.tsv"), wordorder::serialize_top_words(fm.columns));
    write_file_atomic(out_path(cfg, toi.name + ".matrix.csv"), wordorder::matrix_to_csv(fm));
  }
  return 0;
}

void write_comparison(const config::RunConfig& cfg, const experiment::Comparison& cmp, bool full) {
  write_file_atomic(out_path(cfg, "folds.csv"), experiment::folds_csv(cmp));
  write_file_atomic(out_path(cfg, "report.txt"), experiment::report_text(cmp));
  if (!full) return;
  write_file_atomic(out_path(cfg, "report.csv"), experiment::report_csv(cmp));
  write_file_atomic(out_path(cfg, "ci.csv"), experiment::ci_csv(cmp));
  write_file_atomic(out_path(cfg, "roc.csv"), experiment::roc_csv(cmp));
}

int cmd_compare(const GlobalOptions& g, bool full, std::ostream& out, std::ostream& err) {
  const auto cfg = resolve_config(g);
  if (cfg.methods.empty()) throw Error(ErrorCode::InvalidConfig, "method list is empty");
  const auto docs = load_docs(cfg);
  const auto cmp = experiment::run_comparison(docs, cfg.tois, cfg.methods, cfg.settings);
  write_comparison(cfg, cmp, full);
  out << experiment::report_text(cmp);
  int status = 0;
  for (const auto& r : cmp.results) {
    if (r.failed) {
      err << "method " << r.id << " FAILED: " << r.error << "\n";
      status = 2;
    }
  }
  return status;
}

struct TrainOptions {
  std::string method = "rwov-nn";
  std::string toi = "ER";
  std::string cls = "pos";
  std::string model;
};

int cmd_train(const GlobalOptions& g, const TrainOptions& o, std::ostream& out) {
  const auto cfg = resolve_config(g);
  const auto docs = load_docs(cfg);
  if (o.cls != "pos" && o.cls != "neg") throw Error(ErrorCode::InvalidConfig, "--class must be pos or neg");
  const auto model = experiment::train_model(docs, find_toi(cfg, o.toi), experiment::parse_method(o.method),
                                             o.cls == "pos", cfg.settings);
  const auto path = o.model.empty() ? out_path(cfg, "model.txt") : o.model;
  write_file_atomic(path, experiment::serialize_model(model));
  out << "wrote " << experiment::method_label(model.method) << " model for " << o.toi << (o.cls == "pos" ? "+" : "-")
      << " to " << path << "\n";
  return 0;
}

int cmd_predict(const GlobalOptions& g, const std::string& model_path, std::ostream& out) {
  auto cfg = g.config_path.empty() && !g.seed ? [&] {
    // Prediction draws no random numbers, so a seed is optional here.
    GlobalOptions copy = g;
    copy.seed = 0;
    return resolve_config(copy);
  }() : resolve_config(g);
  const auto model = experiment::parse_model(read_file(model_path));
  const auto docs = load_docs(cfg);
  const auto scored = experiment::predict(model, docs);
  const auto path = out_path(cfg, "predictions.csv");
  write_file_atomic(path, experiment::predictions_csv(model, scored));
  std::size_t missing = 0;
  for (const auto& s : scored) missing += s.score ? 0 : 1;
  out << "scored " << scored.size() - missing << " documents, " << missing << " without the TOI; wrote " << path << "\n";
  return 0;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Relevant word order vectorization toolkit", "rwov"};
  app.require_subcommand(1);
  GlobalOptions g;
  app.add_option("--config", g.config_path, "Run configuration file");
  app.add_option("--seed", g.seed, "Root seed for every random stream");
  app.add_option("--out", g.out_dir, "Output directory");
  app.add_option("--format", g.format, "Corpus format")->check(CLI::IsMember({"jsonl", "csv"}));
  app.add_option("--corpus", g.corpus_path, "Corpus file (overrides the config)");
  app.add_option("--methods", g.methods, "Comma separated method ids (overrides the config)");

  SynthOptions synth;
  auto* synth_cmd = app.add_subcommand("synth", "Generate a synthetic labeled corpus");
  synth_cmd->add_option("--preset", synth.preset, "Prevalence preset (table1)");
  synth_cmd->add_option("--n", synth.n, "Number of documents");
  synth_cmd->add_option("--noise", synth.noise, "Fraction of documents with perturbed phrasing");
  synth_cmd->add_option("--prevalence", synth.prevalence, "TOI=fraction, repeatable");
  synth_cmd->add_option("--templates", synth.templates, "Template bank file");
  synth_cmd->add_option("--file", synth.file, "Output corpus path");

  auto* vectorize_cmd = app.add_subcommand("vectorize", "Write top words and feature matrices per TOI");

  TrainOptions train;
  auto* train_cmd = app.add_subcommand("train", "Train and persist one single-class model");
  train_cmd->add_option("--method", train.method, "Method id");
  train_cmd->add_option("--toi", train.toi, "TOI name");
  train_cmd->add_option("--class", train.cls, "pos or neg");
  train_cmd->add_option("--model", train.model, "Model output path");

  std::string predict_model;
  auto* predict_cmd = app.add_subcommand("predict", "Score documents with a persisted model");
  predict_cmd->add_option("--model", predict_model, "Model file")->required();

  auto* crossval_cmd = app.add_subcommand("crossval", "Cross-validate the configured methods");
  auto* compare_cmd = app.add_subcommand("compare", "Full comparison with report, CI and ROC files");

  std::vector<std::string> argv_rev(args.rbegin(), args.rend());
  try {
    app.parse(argv_rev);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  try {
    if (*synth_cmd) return cmd_synth(g, synth, out);
    if (*vectorize_cmd) return cmd_vectorize(g, out);
    if (*train_cmd) return cmd_train(g, train, out);
    if (*predict_cmd) return cmd_predict(g, predict_model, out);
    if (*crossval_cmd) return cmd_compare(g, false, out, err);
    if (*compare_cmd) return cmd_compare(g, true, out, err);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}

}  // namespace rwov::cli
