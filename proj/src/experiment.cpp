#include "rwov/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace rwov::experiment {

MethodSpec parse_method(std::string_view raw) {
  const auto id = to_lower(trim(raw));
  MethodSpec m;
  m.id = id;
  if (id == "rwov-nn") {
    m.classifier = ClassifierKind::Mlp;
    return m;
  }
  if (id == "rwov-svm") return m;

  auto open = id.find('(');
  auto comma = id.find(',');
  auto close = id.find(')');
  if (open != std::string::npos && comma != std::string::npos && close == id.size() - 1 && open < comma &&
      comma < close) {
    const auto prefix = id.substr(0, open);
    unsigned lo = 0, hi = 0;
    char tail = 0;
    const auto args = id.substr(open + 1, close - open - 1);
    if ((prefix == "svm" || prefix == "nn") && std::sscanf(args.c_str(), "%u,%u%c", &lo, &hi, &tail) == 2 &&
        lo >= 1 && hi >= lo) {
      m.vectorizer = VectorizerKind::NGram;
      m.range = {lo, hi};
      m.classifier = prefix == "svm" ? ClassifierKind::Svm : ClassifierKind::Mlp;
      return m;
    }
  }
  throw Error(ErrorCode::InvalidConfig, "unknown method id '" + std::string(raw) + "'");
}

std::string method_label(const MethodSpec& m) {
  const std::string clf = m.classifier == ClassifierKind::Svm ? "SVM" : "NN";
  if (m.vectorizer == VectorizerKind::WordOrder) return "RWOV-" + clf;
  return clf + "(" + std::to_string(m.range.lo) + "," + std::to_string(m.range.hi) + ")";
}

std::vector<std::string> split_method_list(std::string_view text) {
  std::vector<std::string> out;
  std::string current;
  int depth = 0;
  for (char c : text) {
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (c == ',' && depth == 0) {
      if (!trim(current).empty()) out.emplace_back(trim(current));
      current.clear();
      continue;
    }
    current += c;
  }
  if (!trim(current).empty()) out.emplace_back(trim(current));
  return out;
}

std::vector<TermOfInterest> default_tois(const std::set<std::string>& stopwords) {
  auto make = [&](std::string name, std::string token, std::vector<std::string> aliases) {
    TermOfInterest t;
    t.name = std::move(name);
    t.pipeline.stopwords = stopwords;
    t.pipeline.toi = std::move(token);
    t.pipeline.aliases = std::move(aliases);
    return t;
  };
  return {make("ER", "er", {"estrogen receptor", "estrogen"}),
          make("PR", "pr", {"progesterone receptor", "progesterone"}),
          make("HER2", "her2", {"her2/neu", "human epidermal growth factor receptor 2"})};
}

TaskData build_task(const std::vector<corpus::Document>& docs, const TermOfInterest& toi, const Settings& settings) {
  TaskData task;
  task.toi = toi.name;
  task.toi_token = toi.pipeline.canonical_toi();
  for (const auto& doc : docs) {
    const auto label = doc.label_for(toi.name);
    if (label == corpus::Label::Unknown) {
      ++task.excluded_unknown;
      continue;
    }
    auto prepared = textprep::prepare(doc, toi.pipeline);
    if (!prepared) {
      ++task.excluded_not_found;
      continue;
    }
    task.ngram_tokens.push_back(settings.ngram_full_text ? textprep::prepare_full_text(doc, toi.pipeline)
                                                         : prepared->tokens);
    task.prepared.push_back(std::move(*prepared));
    task.positive.push_back(label == corpus::Label::Positive ? 1 : 0);
  }
  return task;
}

std::vector<std::vector<std::size_t>> make_folds(const TaskData& task, const Settings& settings) {
  return metrics::stratified_kfold(task.positive, settings.folds, derive_seed(settings.seed, "split/" + task.toi));
}

std::size_t FittedVectorizer::dim() const {
  return kind == VectorizerKind::WordOrder ? top.size() : vocab.size();
}

Matrix FittedVectorizer::transform_prepared(const std::vector<textprep::PreparedDoc>& prepared,
                                            const std::vector<std::vector<std::string>>& ngram_tokens) const {
  if (kind == VectorizerKind::WordOrder) return wordorder::transform(prepared, top).values;
  return ngram::idf_weight(ngram::transform(ngram_tokens, vocab), vocab);
}

Matrix FittedVectorizer::transform(const TaskData& task, std::span<const std::size_t> rows) const {
  std::vector<textprep::PreparedDoc> prepared;
  std::vector<std::vector<std::string>> tokens;
  for (auto r : rows) {
    if (kind == VectorizerKind::WordOrder) prepared.push_back(task.prepared[r]);
    else tokens.push_back(task.ngram_tokens[r]);
  }
  return transform_prepared(prepared, tokens);
}

FittedVectorizer fit_vectorizer(const MethodSpec& method, const TaskData& task, std::span<const std::size_t> rows,
                                const Settings& settings) {
  FittedVectorizer v;
  v.kind = method.vectorizer;
  if (v.kind == VectorizerKind::WordOrder) {
    std::vector<textprep::PreparedDoc> prepared;
    for (auto r : rows) prepared.push_back(task.prepared[r]);
    v.top = wordorder::select_top_words(prepared, settings.top_words, task.toi_token);
  } else {
    std::vector<std::vector<std::string>> tokens;
    for (auto r : rows) tokens.push_back(task.ngram_tokens[r]);
    v.vocab = ngram::fit(tokens, method.range);
  }
  return v;
}

std::size_t FittedClassifier::dim() const {
  return kind == ClassifierKind::Svm ? svm.weights.size() : mlp.input_size();
}

double FittedClassifier::score(std::span<const double> x) const {
  return kind == ClassifierKind::Svm ? models::svm_score(svm, x) : models::mlp_logit(mlp, x);
}

FittedClassifier train_classifier(ClassifierKind kind, const Matrix& x, std::span<const int> target,
                                  const std::vector<std::size_t>& hidden, const Settings& settings,
                                  std::uint64_t seed) {
  FittedClassifier c;
  c.kind = kind;
  if (kind == ClassifierKind::Svm) {
    std::vector<int> signs(target.size());
    for (std::size_t i = 0; i < target.size(); ++i) signs[i] = target[i] ? 1 : -1;
    auto hyper = settings.svm;
    hyper.seed = seed;
    c.svm = models::svm_train(x, signs, hyper);
  } else {
    std::vector<std::size_t> sizes{x.cols()};
    sizes.insert(sizes.end(), hidden.begin(), hidden.end());
    sizes.push_back(1);
    auto hyper = settings.mlp;
    hyper.seed = seed;
    c.mlp = models::mlp_train(x, target, sizes, hyper);
  }
  return c;
}

namespace {

std::vector<int> class_target(const TaskData& task, bool positive) {
  std::vector<int> y(task.positive.size());
  for (std::size_t i = 0; i < y.size(); ++i) y[i] = positive ? task.positive[i] : 1 - task.positive[i];
  return y;
}

std::vector<std::size_t> complement(std::size_t n, const std::vector<std::size_t>& test) {
  std::vector<bool> in_test(n, false);
  for (auto i : test) in_test[i] = true;
  std::vector<std::size_t> train;
  for (std::size_t i = 0; i < n; ++i) {
    if (!in_test[i]) train.push_back(i);
  }
  return train;
}

}  // namespace

ClassResult evaluate_class(const MethodSpec& method, const TaskData& task,
                           const std::vector<std::vector<std::size_t>>& folds, const ClassKey& key,
                           const std::vector<std::size_t>& hidden, const Settings& settings) {
  ClassResult result;
  result.key = key;
  const auto target = class_target(task, key.positive);
  const std::string stream = method.id + "/" + key.label();

  for (std::size_t f = 0; f < folds.size(); ++f) {
    const auto& test = folds[f];
    const auto train = complement(task.positive.size(), test);
    const auto vectorizer = fit_vectorizer(method, task, train, settings);
    const auto x_train = vectorizer.transform(task, train);
    std::vector<int> y_train;
    for (auto i : train) y_train.push_back(target[i]);
    const auto clf = train_classifier(method.classifier, x_train, y_train, hidden, settings,
                                      derive_seed(settings.seed, "init/" + stream + "/" + std::to_string(f)));

    const auto x_test = vectorizer.transform(task, test);
    std::vector<double> scores;
    std::vector<int> predicted, actual;
    for (std::size_t r = 0; r < test.size(); ++r) {
      const double s = clf.score(x_test.row(r));
      scores.push_back(s);
      predicted.push_back(s >= 0.0 ? 1 : 0);
      actual.push_back(target[test[r]]);
      result.pooled.push_back({s, target[test[r]], predicted.back()});
      result.pooled_ids.push_back(task.prepared[test[r]].doc_id);
    }
    const auto f1 = metrics::f1_score(metrics::confusion(predicted, actual));
    result.folds.push_back({f1.f1, f1.precision, f1.recall, metrics::auc(scores, actual)});
  }

  const auto n = static_cast<double>(result.folds.size());
  for (const auto& fm : result.folds) {
    result.mean.f1 += fm.f1 / n;
    result.mean.precision += fm.precision / n;
    result.mean.recall += fm.recall / n;
    result.mean.auc += fm.auc / n;
  }
  result.pooled_f1 = metrics::evaluate(result.pooled, metrics::Metric::F1);
  result.pooled_auc = metrics::evaluate(result.pooled, metrics::Metric::Auc);
  result.ci_f1 = metrics::bootstrap_ci(result.pooled, metrics::Metric::F1, settings.bootstrap, settings.level,
                                       derive_seed(settings.seed, "bootstrap/" + stream + "/f1"));
  result.ci_auc = metrics::bootstrap_ci(result.pooled, metrics::Metric::Auc, settings.bootstrap, settings.level,
                                        derive_seed(settings.seed, "bootstrap/" + stream + "/auc"));
  std::vector<double> scores;
  std::vector<int> labels;
  for (const auto& p : result.pooled) {
    scores.push_back(p.score);
    labels.push_back(p.label);
  }
  result.roc = metrics::roc_curve(scores, labels);
  return result;
}

MethodResult crossval(const MethodSpec& method, const std::vector<TaskData>& tasks,
                      const std::map<std::string, std::vector<std::vector<std::size_t>>>& folds,
                      const ArchitectureMap& architectures, const Settings& settings) {
  MethodResult out;
  out.id = method.id;
  out.label = method_label(method);
  for (const auto& task : tasks) {
    for (bool positive : {true, false}) {
      ClassKey key{task.toi, positive};
      auto arch = architectures.find(key.label());
      const auto& hidden = arch != architectures.end() ? arch->second : settings.mlp_hidden;
      out.classes.push_back(evaluate_class(method, task, folds.at(task.toi), key, hidden, settings));
    }
  }
  return out;
}

ArchitectureMap select_architectures(const std::vector<TaskData>& tasks, const Settings& settings) {
  ArchitectureMap arch;
  const auto reference = parse_method("nn(1,2)");
  for (const auto& task : tasks) {
    std::vector<std::size_t> all(task.positive.size());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
    const auto vectorizer = fit_vectorizer(reference, task, all, settings);
    const auto x = vectorizer.transform(task, all);
    for (bool positive : {true, false}) {
      ClassKey key{task.toi, positive};
      if (!settings.grid_search || settings.mlp_grid.size() < 2) {
        arch[key.label()] = settings.grid_search && settings.mlp_grid.size() == 1 ? settings.mlp_grid[0]
                                                                                  : settings.mlp_hidden;
        continue;
      }
      auto hyper = settings.mlp;
      hyper.seed = derive_seed(settings.seed, "grid/" + key.label());
      const auto result =
          models::grid_search_mlp(x, class_target(task, positive), settings.mlp_grid, settings.folds, hyper);
      arch[key.label()] = result.best_hidden;
    }
  }
  return arch;
}

Comparison run_comparison(const std::vector<corpus::Document>& docs, const std::vector<TermOfInterest>& tois,
                          const std::vector<std::string>& method_ids, const Settings& settings) {
  if (method_ids.empty()) throw Error(ErrorCode::InvalidConfig, "method list is empty");
  Comparison cmp;
  for (const auto& toi : tois) {
    auto task = build_task(docs, toi, settings);
    if (task.prepared.empty()) {
      throw Error(ErrorCode::EmptyInput, "no labeled document mentions TOI '" + toi.pipeline.toi + "'");
    }
    cmp.folds[task.toi] = make_folds(task, settings);
    cmp.class_labels.push_back(ClassKey{task.toi, true}.label());
    cmp.class_labels.push_back(ClassKey{task.toi, false}.label());
    cmp.tasks.push_back(std::move(task));
  }

  std::vector<std::optional<MethodSpec>> specs;
  bool any_network = false;
  for (const auto& id : method_ids) {
    try {
      specs.push_back(parse_method(id));
      any_network = any_network || specs.back()->classifier == ClassifierKind::Mlp;
    } catch (const Error&) {
      specs.push_back(std::nullopt);
    }
  }
  if (any_network) cmp.architectures = select_architectures(cmp.tasks, settings);

  for (std::size_t m = 0; m < method_ids.size(); ++m) {
    if (!specs[m]) {
      MethodResult failed;
      failed.id = method_ids[m];
      failed.label = method_ids[m];
      failed.failed = true;
      failed.error = "unknown method id '" + method_ids[m] + "'";
      cmp.results.push_back(std::move(failed));
      continue;
    }
    try {
      cmp.results.push_back(crossval(*specs[m], cmp.tasks, cmp.folds, cmp.architectures, settings));
    } catch (const std::exception& e) {
      MethodResult failed;
      failed.id = specs[m]->id;
      failed.label = method_label(*specs[m]);
      failed.failed = true;
      failed.error = e.what();
      cmp.results.push_back(std::move(failed));
    }
  }
  return cmp;
}

namespace {

const ClassResult* find_class(const MethodResult& r, const std::string& label) {
  for (const auto& c : r.classes) {
    if (c.key.label() == label) return &c;
  }
  return nullptr;
}

constexpr int kReportDecimals = 4;

double at_report_precision(double v) { return std::round(v * 1e4); }

}  // namespace

std::vector<std::vector<bool>> best_marks(const Comparison& cmp, bool auc) {
  std::vector<std::vector<bool>> marks(cmp.results.size(), std::vector<bool>(cmp.class_labels.size(), false));
  for (std::size_t c = 0; c < cmp.class_labels.size(); ++c) {
    // Compare at report precision so that printed ties share the mark.
    bool found = false;
    double best_value = -1.0;
    for (const auto& r : cmp.results) {
      const auto* cls = find_class(r, cmp.class_labels[c]);
      if (r.failed || cls == nullptr) continue;
      const double v = at_report_precision(auc ? cls->mean.auc : cls->mean.f1);
      if (!found || v > best_value) {
        best_value = v;
        found = true;
      }
    }
    if (!found) continue;
    for (std::size_t m = 0; m < cmp.results.size(); ++m) {
      const auto* cls = find_class(cmp.results[m], cmp.class_labels[c]);
      if (cmp.results[m].failed || cls == nullptr) continue;
      const double v = at_report_precision(auc ? cls->mean.auc : cls->mean.f1);
      marks[m][c] = v == best_value;
    }
  }
  return marks;
}

std::string report_csv(const Comparison& cmp) {
  std::string out = "method";
  for (const auto& c : cmp.class_labels) out += "," + c + " F1," + c + " AUC";
  out += '\n';
  for (const auto& r : cmp.results) {
    out += r.label;
    for (const auto& c : cmp.class_labels) {
      const auto* cls = find_class(r, c);
      if (r.failed || cls == nullptr) {
        out += ",FAILED,FAILED";
      } else {
        out += "," + format_fixed(cls->mean.f1, kReportDecimals) + "," + format_fixed(cls->mean.auc, kReportDecimals);
      }
    }
    out += '\n';
  }
  return out;
}

std::string report_text(const Comparison& cmp) {
  const auto f1_marks = best_marks(cmp, false);
  const auto auc_marks = best_marks(cmp, true);
  std::size_t name_width = 6;
  for (const auto& r : cmp.results) name_width = std::max(name_width, r.label.size());
  std::size_t cell = 9;
  for (const auto& c : cmp.class_labels) cell = std::max(cell, c.size() + 6);

  auto pad = [](std::string s, std::size_t w) {
    if (s.size() < w) s.insert(0, w - s.size(), ' ');
    return s;
  };
  std::string out = "Fold-averaged F1 and AUC over " + std::to_string(cmp.folds.empty() ? 0 : cmp.folds.begin()->second.size()) +
                    "-fold stratified cross-validation ('*' = best in column)\n";
  std::string line = std::string(name_width, ' ');
  for (const auto& c : cmp.class_labels) line += pad(c + " F1 ", cell) + pad(c + " AUC ", cell);
  out += line + "\n";
  for (std::size_t m = 0; m < cmp.results.size(); ++m) {
    const auto& r = cmp.results[m];
    std::string row = r.label + std::string(name_width - r.label.size(), ' ');
    for (std::size_t c = 0; c < cmp.class_labels.size(); ++c) {
      const auto* cls = find_class(r, cmp.class_labels[c]);
      if (r.failed || cls == nullptr) {
        row += pad("FAILED ", cell) + pad("FAILED ", cell);
        continue;
      }
      row += pad(format_fixed(cls->mean.f1, kReportDecimals) + (f1_marks[m][c] ? "*" : " "), cell);
      row += pad(format_fixed(cls->mean.auc, kReportDecimals) + (auc_marks[m][c] ? "*" : " "), cell);
    }
    out += row + "\n";
  }
  for (const auto& r : cmp.results) {
    if (r.failed) out += "FAILED " + r.label + ": " + r.error + "\n";
  }
  for (const auto& t : cmp.tasks) {
    out += t.toi + ": " + std::to_string(t.prepared.size()) + " documents evaluated, " +
           std::to_string(t.excluded_not_found) + " excluded (TOI not mentioned), " +
           std::to_string(t.excluded_unknown) + " excluded (label unknown)\n";
  }
  for (const auto& [label, hidden] : cmp.architectures) {
    out += "network hidden layers for " + label + ":";
    if (hidden.empty()) out += " none";
    for (auto h : hidden) out += " " + std::to_string(h);
    out += "\n";
  }
  return out;
}

std::string ci_csv(const Comparison& cmp) {
  std::string out = "method,class,metric,point,lo,hi\n";
  for (const auto& r : cmp.results) {
    if (r.failed) {
      out += r.label + ",,FAILED,,,\n";
      continue;
    }
    for (const auto& c : r.classes) {
      out += r.label + "," + c.key.label() + ",F1," + format_double(c.pooled_f1) + "," + format_double(c.ci_f1.lo) +
             "," + format_double(c.ci_f1.hi) + "\n";
      out += r.label + "," + c.key.label() + ",AUC," + format_double(c.pooled_auc) + "," +
             format_double(c.ci_auc.lo) + "," + format_double(c.ci_auc.hi) + "\n";
    }
  }
  return out;
}

std::string roc_csv(const Comparison& cmp) {
  std::string out = "method,class,fpr,tpr\n";
  for (const auto& r : cmp.results) {
    if (r.failed) continue;
    for (const auto& c : r.classes) {
      for (const auto& p : c.roc) {
        out += r.label + "," + c.key.label() + "," + format_double(p.fpr) + "," + format_double(p.tpr) + "\n";
      }
    }
  }
  return out;
}

std::string folds_csv(const Comparison& cmp) {
  std::string out = "method,class,fold,f1,precision,recall,auc\n";
  for (const auto& r : cmp.results) {
    if (r.failed) {
      out += r.label + ",,FAILED,,,,\n";
      continue;
    }
    for (const auto& c : r.classes) {
      for (std::size_t f = 0; f < c.folds.size(); ++f) {
        const auto& fm = c.folds[f];
        out += r.label + "," + c.key.label() + "," + std::to_string(f + 1) + "," + format_double(fm.f1) + "," +
               format_double(fm.precision) + "," + format_double(fm.recall) + "," + format_double(fm.auc) + "\n";
      }
    }
  }
  return out;
}

// ---------------------------------------------------------------------------

TrainedModel train_model(const std::vector<corpus::Document>& docs, const TermOfInterest& toi,
                         const MethodSpec& method, bool positive_class, const Settings& settings) {
  const auto task = build_task(docs, toi, settings);
  if (task.prepared.empty()) {
    throw Error(ErrorCode::EmptyInput, "no labeled document mentions TOI '" + toi.pipeline.toi + "'");
  }
  std::vector<std::size_t> all(task.positive.size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  TrainedModel model;
  model.method = method;
  model.toi = toi;
  model.positive_class = positive_class;
  model.ngram_full_text = settings.ngram_full_text;
  model.vectorizer = fit_vectorizer(method, task, all, settings);
  const auto x = model.vectorizer.transform(task, all);
  const auto target = class_target(task, positive_class);
  const ClassKey key{toi.name, positive_class};
  model.classifier = train_classifier(method.classifier, x, target, settings.mlp_hidden, settings,
                                      derive_seed(settings.seed, "init/" + method.id + "/" + key.label() + "/final"));
  return model;
}

std::vector<ScoredDoc> predict(const TrainedModel& model, const std::vector<corpus::Document>& docs) {
  std::vector<ScoredDoc> out;
  for (const auto& doc : docs) {
    ScoredDoc s;
    s.doc_id = doc.id;
    auto prepared = textprep::prepare(doc, model.toi.pipeline);
    if (prepared) {
      std::vector<std::vector<std::string>> tokens{
          model.ngram_full_text ? textprep::prepare_full_text(doc, model.toi.pipeline) : prepared->tokens};
      std::vector<textprep::PreparedDoc> rows{*prepared};
      const auto x = model.vectorizer.transform_prepared(rows, tokens);
      s.score = model.classifier.score(x.row(0));
      s.predicted = *s.score >= 0.0 ? 1 : 0;
    }
    out.push_back(std::move(s));
  }
  return out;
}

std::string predictions_csv(const TrainedModel& model, const std::vector<ScoredDoc>& scored) {
  const std::string yes = model.positive_class ? "pos" : "neg";
  const std::string no = model.positive_class ? "neg" : "pos";
  std::string out = "doc_id,score,predicted_class,flag\n";
  for (const auto& s : scored) {
    if (!s.score) {
      out += s.doc_id + ",,,toi_not_found\n";
      continue;
    }
    out += s.doc_id + "," + format_double(*s.score) + "," + (s.predicted ? yes : no) + ",\n";
  }
  return out;
}

std::string serialize_model(const TrainedModel& model) {
  std::string out = "rwov-model " + std::to_string(kModelFileVersion) + "\n";
  out += "method " + model.method.id + "\n";
  out += "toi " + model.toi.name + "\n";
  out += "token " + model.toi.pipeline.toi + "\n";
  for (const auto& a : model.toi.pipeline.aliases) out += "alias " + a + "\n";
  out += std::string("stem_toi ") + (model.toi.pipeline.stem_toi ? "1" : "0") + "\n";
  out += "stopwords";
  for (const auto& w : model.toi.pipeline.stopwords) out += " " + w;
  out += "\n";
  out += std::string("class ") + (model.positive_class ? "pos" : "neg") + "\n";
  out += std::string("ngram_scope ") + (model.ngram_full_text ? "full" : "sentence") + "\n";
  out += "begin vectorizer\n";
  out += model.vectorizer.kind == VectorizerKind::WordOrder ? wordorder::serialize_top_words(model.vectorizer.top)
                                                            : ngram::serialize_vocabulary(model.vectorizer.vocab);
  out += "end vectorizer\nbegin classifier\n";
  out += model.classifier.kind == ClassifierKind::Svm ? models::serialize_svm(model.classifier.svm)
                                                      : models::serialize_mlp(model.classifier.mlp);
  out += "end classifier\n";
  return out;
}

TrainedModel parse_model(std::string_view content) {
  auto lines = split(content, '\n');
  if (lines.empty()) throw Error(ErrorCode::MalformedRecord, "empty model file");
  {
    auto head = split(trim(lines[0]), ' ');
    if (head.size() != 2 || head[0] != "rwov-model") throw Error(ErrorCode::MalformedRecord, "not a model file");
    if (head[1] != std::to_string(kModelFileVersion)) {
      throw Error(ErrorCode::VersionMismatch, "model file version " + head[1] + ", supported " +
                                                  std::to_string(kModelFileVersion));
    }
  }
  TrainedModel model;
  model.toi.pipeline.stopwords.clear();
  std::string vectorizer_text, classifier_text;
  std::string* block = nullptr;
  bool have_method = false;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const std::string& raw = lines[i];
    if (raw == "begin vectorizer") { block = &vectorizer_text; continue; }
    if (raw == "begin classifier") { block = &classifier_text; continue; }
    if (raw == "end vectorizer" || raw == "end classifier") { block = nullptr; continue; }
    if (block != nullptr) {
      *block += raw + "\n";
      continue;
    }
    if (trim(raw).empty()) continue;
    const auto space = raw.find(' ');
    const std::string key = raw.substr(0, space);
    const std::string value = space == std::string::npos ? "" : raw.substr(space + 1);
    if (key == "method") {
      model.method = parse_method(value);
      have_method = true;
    } else if (key == "toi") model.toi.name = value;
    else if (key == "token") model.toi.pipeline.toi = value;
    else if (key == "alias") model.toi.pipeline.aliases.push_back(value);
    else if (key == "stem_toi") model.toi.pipeline.stem_toi = value == "1";
    else if (key == "stopwords") {
      for (const auto& w : split(value, ' ')) {
        if (!w.empty()) model.toi.pipeline.stopwords.insert(w);
      }
    } else if (key == "class") model.positive_class = value == "pos";
    else if (key == "ngram_scope") model.ngram_full_text = value == "full";
    else throw Error(ErrorCode::MalformedRecord, "unknown model key '" + key + "' at line " + std::to_string(i + 1));
  }
  if (!have_method) throw Error(ErrorCode::MalformedRecord, "model file lacks a method line");
  model.vectorizer.kind = model.method.vectorizer;
  if (model.vectorizer.kind == VectorizerKind::WordOrder) model.vectorizer.top = wordorder::parse_top_words(vectorizer_text);
  else model.vectorizer.vocab = ngram::parse_vocabulary(vectorizer_text);
  model.classifier.kind = model.method.classifier;
  if (model.classifier.kind == ClassifierKind::Svm) model.classifier.svm = models::parse_svm(classifier_text);
  else model.classifier.mlp = models::parse_mlp(classifier_text);
  if (model.vectorizer.dim() != model.classifier.dim()) {
    throw Error(ErrorCode::DimensionMismatch, "vectorizer produces " + std::to_string(model.vectorizer.dim()) +
                                                  " features but classifier expects " +
                                                  std::to_string(model.classifier.dim()));
  }
  return model;
}

}  // namespace rwov::experiment
