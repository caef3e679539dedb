#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

// Binary classification metrics. Labels and predictions are 0/1 with 1 the
// class of interest.
namespace rwov::metrics {

struct ConfusionCounts {
  std::size_t tp = 0;
  std::size_t fp = 0;
  std::size_t fn = 0;
  std::size_t tn = 0;

  std::size_t total() const { return tp + fp + fn + tn; }
  friend bool operator==(const ConfusionCounts&, const ConfusionCounts&) = default;
};

ConfusionCounts confusion(std::span<const int> predicted, std::span<const int> actual);

struct F1Result {
  double f1 = 0.0;
  double precision = 0.0;
  double recall = 0.0;
  bool undefined = false;  // tp = fp = fn = 0: no positives predicted or present
};

// Harmonic mean of precision and recall; 0 whenever tp = 0.
F1Result f1_score(const ConfusionCounts& counts);

// Mann-Whitney estimate of P(score_pos > score_neg), ties counted 1/2.
// Computed from average ranks. Throws SingleClassInput.
double auc(std::span<const double> scores, std::span<const int> labels);

struct RocPoint {
  double fpr = 0.0;
  double tpr = 0.0;
  friend bool operator==(const RocPoint&, const RocPoint&) = default;
};

// Thresholds at each distinct score, descending, from (0,0) to (1,1).
std::vector<RocPoint> roc_curve(std::span<const double> scores, std::span<const int> labels);
double trapezoid_area(std::span<const RocPoint> points);

// k disjoint, covering, ascending index sets; per-class counts differ by at
// most one between folds. Throws ClassTooSmall when a class has fewer than k
// members.
std::vector<std::vector<std::size_t>> stratified_kfold(std::span<const int> labels, std::size_t k,
                                                       std::uint64_t seed);

struct Prediction {
  double score = 0.0;
  int label = 0;
  int predicted = 0;
};

enum class Metric { F1, Auc };

double evaluate(std::span<const Prediction> predictions, Metric metric);

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
};

// Percentile bootstrap. Replicates containing a single class are redrawn;
// more than 10*B draws in total raises DegenerateResampling.
Interval bootstrap_ci(std::span<const Prediction> predictions, Metric metric, std::size_t replicates,
                      double level, std::uint64_t seed);

// Linear interpolation between order statistics of sorted values.
double quantile_sorted(std::span<const double> sorted, double q);

}  // namespace rwov::metrics
