#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "rwov/common.hpp"
#include "rwov/corpus.hpp"
#include "rwov/metrics.hpp"
#include "rwov/models.hpp"
#include "rwov/ngram.hpp"
#include "rwov/textprep.hpp"
#include "rwov/wordorder.hpp"

// Wires corpus -> text preparation -> vectorizer -> classifier -> metrics
// under one shared fold partition per term of interest.
namespace rwov::experiment {

enum class VectorizerKind { WordOrder, NGram };
enum class ClassifierKind { Svm, Mlp };

struct MethodSpec {
  std::string id;  // as written in configs: rwov-nn, rwov-svm, svm(1,2), nn(2,3)
  VectorizerKind vectorizer = VectorizerKind::WordOrder;
  ngram::GramRange range;
  ClassifierKind classifier = ClassifierKind::Svm;
};

// Throws InvalidConfig for unrecognized ids.
MethodSpec parse_method(std::string_view id);
// Report row name: RWOV-NN, RWOV-SVM, SVM(1,2), NN(3,3).
std::string method_label(const MethodSpec& method);

// Splits "a, svm(1,2), b" on commas outside parentheses.
std::vector<std::string> split_method_list(std::string_view text);

struct TermOfInterest {
  std::string name;  // label key in the corpus, e.g. "ER"
  textprep::PipelineConfig pipeline;
};

// ER, PR and HER2 with their spelled-out receptor names as aliases.
std::vector<TermOfInterest> default_tois(const std::set<std::string>& stopwords = textprep::default_stopwords());

struct Settings {
  std::size_t top_words = wordorder::kDefaultTopWords;
  bool ngram_full_text = false;
  models::SvmHyper svm;
  models::MlpHyper mlp;
  std::vector<std::size_t> mlp_hidden = {16};
  std::vector<std::vector<std::size_t>> mlp_grid = {{8}, {16}, {32}, {16, 8}};
  bool grid_search = true;
  std::size_t folds = 3;
  std::size_t bootstrap = 1000;
  double level = 0.95;
  std::uint64_t seed = 0;
};

// Documents of one TOI that carry a known label and mention the TOI.
struct TaskData {
  std::string toi;        // label key
  std::string toi_token;  // canonical token in prepared docs
  std::vector<textprep::PreparedDoc> prepared;
  std::vector<std::vector<std::string>> ngram_tokens;  // per prepared doc
  std::vector<int> positive;                           // 1 = POSITIVE label
  std::size_t excluded_unknown = 0;
  std::size_t excluded_not_found = 0;
};

TaskData build_task(const std::vector<corpus::Document>& docs, const TermOfInterest& toi, const Settings& settings);

// Seeded from the "split/<toi>" stream of the root seed, so every method in a
// run sees the same partition.
std::vector<std::vector<std::size_t>> make_folds(const TaskData& task, const Settings& settings);

struct FittedVectorizer {
  VectorizerKind kind = VectorizerKind::WordOrder;
  wordorder::TopWords top;
  ngram::Vocabulary vocab;

  std::size_t dim() const;
  Matrix transform(const TaskData& task, std::span<const std::size_t> rows) const;
  Matrix transform_prepared(const std::vector<textprep::PreparedDoc>& prepared,
                            const std::vector<std::vector<std::string>>& ngram_tokens) const;
};

FittedVectorizer fit_vectorizer(const MethodSpec& method, const TaskData& task, std::span<const std::size_t> rows,
                                const Settings& settings);

struct FittedClassifier {
  ClassifierKind kind = ClassifierKind::Svm;
  models::LinearSvm svm;
  models::Mlp mlp;

  std::size_t dim() const;
  // SVM margin or network logit; higher means the modeled class.
  double score(std::span<const double> x) const;
  int predict(std::span<const double> x) const { return score(x) >= 0.0 ? 1 : 0; }
};

// `target` holds 0/1 for the modeled class.
FittedClassifier train_classifier(ClassifierKind kind, const Matrix& x, std::span<const int> target,
                                  const std::vector<std::size_t>& hidden, const Settings& settings,
                                  std::uint64_t seed);

// "ER+" models POSITIVE as the class of interest, "ER-" models NEGATIVE.
struct ClassKey {
  std::string toi;
  bool positive = true;
  std::string label() const { return toi + (positive ? "+" : "-"); }
};

struct FoldMetrics {
  double f1 = 0.0;
  double precision = 0.0;
  double recall = 0.0;
  double auc = 0.0;
};

struct ClassResult {
  ClassKey key;
  std::vector<FoldMetrics> folds;
  FoldMetrics mean;                              // fold-averaged
  std::vector<metrics::Prediction> pooled;       // all test predictions
  std::vector<std::string> pooled_ids;
  double pooled_f1 = 0.0;
  double pooled_auc = 0.0;
  metrics::Interval ci_f1;
  metrics::Interval ci_auc;
  std::vector<metrics::RocPoint> roc;
};

struct MethodResult {
  std::string id;
  std::string label;
  bool failed = false;
  std::string error;
  std::vector<ClassResult> classes;
};

// Hidden layouts for the network arm, per class label.
using ArchitectureMap = std::map<std::string, std::vector<std::size_t>>;

ClassResult evaluate_class(const MethodSpec& method, const TaskData& task,
                           const std::vector<std::vector<std::size_t>>& folds, const ClassKey& key,
                           const std::vector<std::size_t>& hidden, const Settings& settings);

MethodResult crossval(const MethodSpec& method, const std::vector<TaskData>& tasks,
                      const std::map<std::string, std::vector<std::vector<std::size_t>>>& folds,
                      const ArchitectureMap& architectures, const Settings& settings);

struct Comparison {
  std::vector<TaskData> tasks;
  std::map<std::string, std::vector<std::vector<std::size_t>>> folds;  // by TOI
  ArchitectureMap architectures;
  std::vector<std::string> class_labels;  // column order
  std::vector<MethodResult> results;
};

// Grid search for the network structure runs on n-gram (1,2) features of
// each task; the winner is reused by every network method.
ArchitectureMap select_architectures(const std::vector<TaskData>& tasks, const Settings& settings);

// Unknown or failing methods are reported as failed; the others complete.
Comparison run_comparison(const std::vector<corpus::Document>& docs, const std::vector<TermOfInterest>& tois,
                          const std::vector<std::string>& method_ids, const Settings& settings);

// Comparison grid as CSV: rows = methods, columns = <class> F1, <class> AUC,
// fold-averaged.
std::string report_csv(const Comparison& cmp);
// Aligned text table; '*' marks the best value per column (ties share it).
std::string report_text(const Comparison& cmp);
// method,class,metric,point,lo,hi  (point = pooled-prediction metric)
std::string ci_csv(const Comparison& cmp);
// method,class,fpr,tpr
std::string roc_csv(const Comparison& cmp);
// method,class,fold,f1,precision,recall,auc
std::string folds_csv(const Comparison& cmp);

// best[m][c] is true when method m attains the column maximum.
std::vector<std::vector<bool>> best_marks(const Comparison& cmp, bool auc);

// ---------------------------------------------------------------------------
// Persisted single-class model: pipeline, vectorizer and classifier.

struct TrainedModel {
  MethodSpec method;
  TermOfInterest toi;
  bool positive_class = true;
  bool ngram_full_text = false;
  FittedVectorizer vectorizer;
  FittedClassifier classifier;
};

TrainedModel train_model(const std::vector<corpus::Document>& docs, const TermOfInterest& toi,
                         const MethodSpec& method, bool positive_class, const Settings& settings);

struct ScoredDoc {
  std::string doc_id;
  std::optional<double> score;  // empty when the TOI is not mentioned
  int predicted = 0;
};

std::vector<ScoredDoc> predict(const TrainedModel& model, const std::vector<corpus::Document>& docs);
// doc_id,score,predicted_class,flag
std::string predictions_csv(const TrainedModel& model, const std::vector<ScoredDoc>& scored);

inline constexpr int kModelFileVersion = 1;
std::string serialize_model(const TrainedModel& model);
// Throws VersionMismatch for unknown versions and DimensionMismatch when the
// vectorizer and classifier disagree on the feature count.
TrainedModel parse_model(std::string_view content);

}  // namespace rwov::experiment
