#include "rwov/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "rwov/common.hpp"

namespace rwov::metrics {

ConfusionCounts confusion(std::span<const int> predicted, std::span<const int> actual) {
  if (predicted.size() != actual.size()) {
    throw Error(ErrorCode::DimensionMismatch, "predictions and labels differ in length");
  }
  ConfusionCounts c;
  for (std::size_t i = 0; i < predicted.size(); ++i) {
    const bool p = predicted[i] != 0;
    const bool a = actual[i] != 0;
    if (p && a) ++c.tp;
    else if (p) ++c.fp;
    else if (a) ++c.fn;
    else ++c.tn;
  }
  return c;
}

F1Result f1_score(const ConfusionCounts& c) {
  F1Result r;
  r.undefined = c.tp == 0 && c.fp == 0 && c.fn == 0;
  const auto tp = static_cast<double>(c.tp);
  if (c.tp + c.fp > 0) r.precision = tp / static_cast<double>(c.tp + c.fp);
  if (c.tp + c.fn > 0) r.recall = tp / static_cast<double>(c.tp + c.fn);
  if (c.tp > 0) r.f1 = 2.0 * r.precision * r.recall / (r.precision + r.recall);
  return r;
}

namespace {

void check_binary_input(std::span<const double> scores, std::span<const int> labels, std::size_t& n_pos,
                        std::size_t& n_neg) {
  if (scores.size() != labels.size()) throw Error(ErrorCode::DimensionMismatch, "scores and labels differ in length");
  n_pos = static_cast<std::size_t>(std::count_if(labels.begin(), labels.end(), [](int l) { return l != 0; }));
  n_neg = labels.size() - n_pos;
  if (n_pos == 0 || n_neg == 0) {
    throw Error(ErrorCode::SingleClassInput, "need both classes, got " + std::to_string(n_pos) + " positive and " +
                                                 std::to_string(n_neg) + " negative");
  }
}

}  // namespace

double auc(std::span<const double> scores, std::span<const int> labels) {
  std::size_t n_pos = 0, n_neg = 0;
  check_binary_input(scores, labels, n_pos, n_neg);

  std::vector<std::size_t> order(scores.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return scores[a] < scores[b]; });

  // Ranks are 1-based; a tie block spanning ranks [i+1, j] gets (i+1+j)/2.
  // Summing doubled ranks keeps everything integral until the final division.
  double doubled_rank_sum = 0.0;
  for (std::size_t i = 0; i < order.size();) {
    std::size_t j = i;
    while (j < order.size() && scores[order[j]] == scores[order[i]]) ++j;
    const double doubled_rank = static_cast<double>(i + 1 + j);
    for (std::size_t t = i; t < j; ++t) {
      if (labels[order[t]] != 0) doubled_rank_sum += doubled_rank;
    }
    i = j;
  }
  const double np = static_cast<double>(n_pos);
  const double doubled_u = doubled_rank_sum - np * (np + 1.0);
  return doubled_u / (2.0 * np * static_cast<double>(n_neg));
}

std::vector<RocPoint> roc_curve(std::span<const double> scores, std::span<const int> labels) {
  std::size_t n_pos = 0, n_neg = 0;
  check_binary_input(scores, labels, n_pos, n_neg);

  std::vector<std::size_t> order(scores.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return scores[a] > scores[b]; });

  std::vector<RocPoint> points{{0.0, 0.0}};
  std::size_t tp = 0, fp = 0;
  for (std::size_t i = 0; i < order.size();) {
    std::size_t j = i;
    while (j < order.size() && scores[order[j]] == scores[order[i]]) {
      if (labels[order[j]] != 0) ++tp;
      else ++fp;
      ++j;
    }
    points.push_back({static_cast<double>(fp) / static_cast<double>(n_neg),
                      static_cast<double>(tp) / static_cast<double>(n_pos)});
    i = j;
  }
  return points;
}

double trapezoid_area(std::span<const RocPoint> points) {
  double area = 0.0;
  for (std::size_t i = 1; i < points.size(); ++i) {
    area += (points[i].fpr - points[i - 1].fpr) * (points[i].tpr + points[i - 1].tpr) / 2.0;
  }
  return area;
}

std::vector<std::vector<std::size_t>> stratified_kfold(std::span<const int> labels, std::size_t k,
                                                       std::uint64_t seed) {
  if (k < 2) throw Error(ErrorCode::ClassTooSmall, "need at least 2 folds");
  std::vector<std::size_t> pos, neg;
  for (std::size_t i = 0; i < labels.size(); ++i) (labels[i] != 0 ? pos : neg).push_back(i);
  if (pos.size() < k || neg.size() < k) {
    throw Error(ErrorCode::ClassTooSmall, "class sizes " + std::to_string(pos.size()) + "/" +
                                              std::to_string(neg.size()) + " cannot fill " + std::to_string(k) +
                                              " folds");
  }
  Rng rng(seed);
  rng.shuffle(pos);
  rng.shuffle(neg);

  std::vector<std::vector<std::size_t>> folds(k);
  // Dealing the second class continues where the first stopped, so total fold
  // sizes also stay within one of each other.
  std::size_t next = 0;
  for (const auto* group : {&pos, &neg}) {
    for (std::size_t idx : *group) {
      folds[next].push_back(idx);
      next = (next + 1) % k;
    }
  }
  for (auto& f : folds) std::sort(f.begin(), f.end());
  return folds;
}

double evaluate(std::span<const Prediction> predictions, Metric metric) {
  std::vector<int> labels(predictions.size());
  for (std::size_t i = 0; i < predictions.size(); ++i) labels[i] = predictions[i].label;
  if (metric == Metric::F1) {
    std::vector<int> predicted(predictions.size());
    for (std::size_t i = 0; i < predictions.size(); ++i) predicted[i] = predictions[i].predicted;
    return f1_score(confusion(predicted, labels)).f1;
  }
  std::vector<double> scores(predictions.size());
  for (std::size_t i = 0; i < predictions.size(); ++i) scores[i] = predictions[i].score;
  return auc(scores, labels);
}

double quantile_sorted(std::span<const double> sorted, double q) {
  if (sorted.empty()) return 0.0;
  const double h = q * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const auto hi = std::min(lo + 1, sorted.size() - 1);
  return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

Interval bootstrap_ci(std::span<const Prediction> predictions, Metric metric, std::size_t replicates,
                      double level, std::uint64_t seed) {
  if (replicates < 100) throw Error(ErrorCode::InvalidConfig, "bootstrap needs at least 100 replicates");
  if (!(level > 0.0 && level < 1.0)) throw Error(ErrorCode::InvalidConfig, "confidence level must lie in (0,1)");
  const std::size_t n = predictions.size();
  const auto n_pos = std::count_if(predictions.begin(), predictions.end(), [](const Prediction& p) { return p.label != 0; });
  if (n_pos == 0 || static_cast<std::size_t>(n_pos) == n) {
    throw Error(ErrorCode::SingleClassInput, "bootstrap input has a single class");
  }

  Rng rng(seed);
  std::vector<double> values;
  values.reserve(replicates);
  std::vector<Prediction> sample(n);
  std::size_t attempts = 0;
  const std::size_t cap = 10 * replicates;
  while (values.size() < replicates) {
    if (attempts++ >= cap) {
      throw Error(ErrorCode::DegenerateResampling,
                  "only " + std::to_string(values.size()) + " usable replicates after " + std::to_string(cap) + " draws");
    }
    bool has_pos = false, has_neg = false;
    for (auto& s : sample) {
      s = predictions[static_cast<std::size_t>(rng.below(n))];
      (s.label != 0 ? has_pos : has_neg) = true;
    }
    if (!has_pos || !has_neg) continue;
    values.push_back(evaluate(sample, metric));
  }
  std::sort(values.begin(), values.end());
  const double tail = (1.0 - level) / 2.0;
  return {quantile_sorted(values, tail), quantile_sorted(values, 1.0 - tail)};
}

}  // namespace rwov::metrics
