#include <cmath>
#include <set>

#include "doctest.h"
#include "support.hpp"

#include "rwov/experiment.hpp"
#include "rwov/metrics.hpp"

using namespace rwov;
using namespace rwov::metrics;

namespace {

double pairs_auc(const std::vector<double>& s, const std::vector<int>& y) {
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    for (std::size_t j = 0; j < s.size(); ++j) {
      if (y[i] != 1 || y[j] != 0) continue;
      den += 1.0;
      num += s[i] > s[j] ? 1.0 : (s[i] == s[j] ? 0.5 : 0.0);
    }
  }
  return num / den;
}

std::vector<corpus::Document> small_corpus(std::size_t n, std::uint64_t seed) {
  corpus::CorpusSpec spec;
  spec.n_docs = n;
  spec.prevalence = corpus::table1_prevalence();
  spec.noise_rate = 0.05;
  spec.seed = seed;
  return corpus::generate_synthetic(spec, corpus::default_template_bank());
}

experiment::Settings fast_settings() {
  experiment::Settings s;
  s.seed = 5;
  s.bootstrap = 200;
  s.mlp.epochs = 40;
  s.grid_search = false;
  return s;
}

}  // namespace

TEST_CASE("f1 examples") {
  CHECK(f1_score({1, 0, 0, 0}).f1 == 1.0);
  CHECK(f1_score({0, 5, 5, 0}).f1 == 0.0);
  CHECK(f1_score({2, 1, 1, 0}).f1 == doctest::Approx(2.0 / 3.0));
  const auto u = f1_score({0, 0, 0, 7});
  CHECK(u.undefined);
  CHECK(u.f1 == 0.0);
}

TEST_CASE("confusion counting") {
  const std::vector<int> p = {1, 1, 0, 0, 1}, a = {1, 0, 1, 0, 1};
  CHECK(confusion(p, a) == ConfusionCounts{2, 1, 1, 1});
  CHECK(testing::error_of([&] { confusion(p, std::vector<int>{1}); }) == ErrorCode::DimensionMismatch);
}

TEST_CASE("majority predictor scores zero minority F1") {
  std::vector<int> actual(100, 0);
  for (int i = 0; i < 10; ++i) actual[i] = 1;
  const std::vector<int> predicted(100, 0);
  CHECK(f1_score(confusion(predicted, actual)).f1 == 0.0);
}

TEST_CASE("auc examples") {
  CHECK(auc(std::vector<double>{0.9, 0.8, 0.1}, std::vector<int>{1, 1, 0}) == 1.0);
  CHECK(auc(std::vector<double>{3, 3, 3, 3}, std::vector<int>{1, 0, 1, 0}) == 0.5);
  CHECK(auc(std::vector<double>{0.9, 0.4, 0.5}, std::vector<int>{1, 1, 0}) == 0.5);
  CHECK(testing::error_of([] { auc(std::vector<double>{1, 2}, std::vector<int>{1, 1}); }) ==
        ErrorCode::SingleClassInput);
}

TEST_CASE("auc agrees with all pairs and is rank invariant") {
  Rng rng(31);
  for (int iter = 0; iter < 500; ++iter) {
    const auto n = 2 + rng.below(30);
    std::vector<double> s(n);
    std::vector<int> y(n);
    for (std::size_t i = 0; i < n; ++i) {
      s[i] = static_cast<double>(rng.below(8)) / 4.0;
      y[i] = static_cast<int>(rng.below(2));
    }
    y[0] = 1;
    y[1] = 0;
    const double a = auc(s, y);
    CHECK(a == doctest::Approx(pairs_auc(s, y)).epsilon(1e-14));
    std::vector<double> t(n);
    for (std::size_t i = 0; i < n; ++i) t[i] = std::exp(3.0 * s[i]) - 7.0;
    CHECK(auc(t, y) == doctest::Approx(a).epsilon(1e-14));
    CHECK(trapezoid_area(roc_curve(s, y)) == doctest::Approx(a).epsilon(1e-12));
  }
}

TEST_CASE("roc curve shape") {
  const auto r = roc_curve(std::vector<double>{0.9, 0.1}, std::vector<int>{1, 0});
  CHECK(r == std::vector<RocPoint>{{0, 0}, {0, 1}, {1, 1}});
  // a tie block across classes gives one diagonal step
  const auto t = roc_curve(std::vector<double>{0.5, 0.5, 0.2}, std::vector<int>{1, 0, 0});
  CHECK(t == std::vector<RocPoint>{{0, 0}, {0.5, 1}, {1, 1}});
  Rng rng(2);
  std::vector<double> s(40);
  std::vector<int> y(40);
  for (std::size_t i = 0; i < 40; ++i) {
    s[i] = rng.uniform();
    y[i] = i % 3 == 0;
  }
  const auto c = roc_curve(s, y);
  CHECK(c.front() == RocPoint{0, 0});
  CHECK(c.back() == RocPoint{1, 1});
  for (std::size_t i = 1; i < c.size(); ++i) {
    CHECK(c[i].fpr >= c[i - 1].fpr);
    CHECK(c[i].tpr >= c[i - 1].tpr);
  }
}

TEST_CASE("stratified folds") {
  const std::vector<int> y = {1, 1, 1, 1, 1, 1, 0, 0, 0};
  const auto f = stratified_kfold(y, 3, 1);
  REQUIRE(f.size() == 3);
  for (const auto& fold : f) {
    int pos = 0;
    for (auto i : fold) pos += y[i];
    CHECK(pos == 2);
    CHECK(fold.size() == 3);
  }
  CHECK(stratified_kfold(y, 3, 1) == f);
  CHECK(testing::error_of([&] { stratified_kfold(y, 4, 1); }) == ErrorCode::ClassTooSmall);

  Rng rng(3);
  for (int iter = 0; iter < 200; ++iter) {
    const auto n = 10 + rng.below(60);
    std::vector<int> labels(n);
    for (auto& l : labels) l = rng.below(4) == 0;
    labels[0] = labels[1] = labels[2] = 1;
    labels[3] = labels[4] = labels[5] = 0;
    const auto folds = stratified_kfold(labels, 3, iter);
    std::set<std::size_t> seen;
    std::size_t lo_pos = n, hi_pos = 0, lo_neg = n, hi_neg = 0;
    for (const auto& fold : folds) {
      CHECK(std::is_sorted(fold.begin(), fold.end()));
      std::size_t p = 0, q = 0;
      for (auto i : fold) {
        CHECK(seen.insert(i).second);
        (labels[i] ? p : q)++;
      }
      lo_pos = std::min(lo_pos, p), hi_pos = std::max(hi_pos, p);
      lo_neg = std::min(lo_neg, q), hi_neg = std::max(hi_neg, q);
    }
    CHECK(seen.size() == n);
    CHECK(hi_pos - lo_pos <= 1);
    CHECK(hi_neg - lo_neg <= 1);
  }
}

TEST_CASE("quantiles interpolate linearly") {
  const std::vector<double> v = {1, 2, 3, 4};
  CHECK(quantile_sorted(v, 0.0) == 1.0);
  CHECK(quantile_sorted(v, 1.0) == 4.0);
  CHECK(quantile_sorted(v, 0.5) == 2.5);
}

TEST_CASE("bootstrap intervals") {
  std::vector<Prediction> perfect;
  for (int i = 0; i < 50; ++i) perfect.push_back({i % 2 ? 1.0 : -1.0, i % 2, i % 2});
  const auto ci = bootstrap_ci(perfect, Metric::F1, 1000, 0.95, 1);
  CHECK(ci.lo == 1.0);
  CHECK(ci.hi == 1.0);

  Rng rng(8);
  for (int iter = 0; iter < 100; ++iter) {
    std::vector<Prediction> p;
    for (int i = 0; i < 60; ++i) {
      const int label = rng.below(3) == 0;
      const double score = rng.uniform() + 0.5 * label;
      p.push_back({score, label, score > 0.6});
    }
    p[0].label = 1;
    p[1].label = 0;
    for (auto metric : {Metric::F1, Metric::Auc}) {
      const auto c = bootstrap_ci(p, metric, 200, 0.95, iter);
      const double point = evaluate(p, metric);
      CHECK(c.lo <= point);
      CHECK(point <= c.hi);
    }
  }
  const auto a = bootstrap_ci(perfect, Metric::Auc, 1000, 0.95, 42);
  const auto b = bootstrap_ci(perfect, Metric::Auc, 1000, 0.95, 42);
  CHECK(a.lo == b.lo);
  CHECK(a.hi == b.hi);
}

TEST_CASE("bootstrap argument errors") {
  std::vector<Prediction> p = {{1, 1, 1}, {0, 0, 0}};
  CHECK(testing::error_of([&] { bootstrap_ci(p, Metric::F1, 50, 0.95, 1); }) == ErrorCode::InvalidConfig);
  CHECK(testing::error_of([&] { bootstrap_ci(p, Metric::F1, 100, 1.5, 1); }) == ErrorCode::InvalidConfig);
  std::vector<Prediction> one = {{1, 1, 1}, {0, 1, 0}};
  CHECK(testing::error_of([&] { bootstrap_ci(one, Metric::F1, 100, 0.95, 1); }) == ErrorCode::SingleClassInput);
}

TEST_CASE("method ids") {
  using namespace rwov::experiment;
  CHECK(method_label(parse_method("rwov-nn")) == "RWOV-NN");
  CHECK(method_label(parse_method("rwov-svm")) == "RWOV-SVM");
  const auto m = parse_method("svm(1,2)");
  CHECK(m.vectorizer == VectorizerKind::NGram);
  CHECK(m.range == ngram::GramRange{1, 2});
  CHECK(method_label(m) == "SVM(1,2)");
  CHECK(method_label(parse_method("nn(3,3)")) == "NN(3,3)");
  CHECK(testing::error_of([] { parse_method("svm(3,1)"); }) == ErrorCode::InvalidConfig);
  CHECK(testing::error_of([] { parse_method("bogus"); }) == ErrorCode::InvalidConfig);
  CHECK(split_method_list("rwov-nn, svm(1,2),nn(2,3)") ==
        std::vector<std::string>{"rwov-nn", "svm(1,2)", "nn(2,3)"});
}

TEST_CASE("task construction excludes unlabeled and TOI-free documents") {
  using namespace rwov::experiment;
  std::vector<corpus::Document> docs = {
      {"a", "Positive for ER.", {{"ER", corpus::Label::Positive}}},
      {"b", "ER negative.", {{"ER", corpus::Label::Negative}}},
      {"c", "Nothing relevant.", {{"ER", corpus::Label::Negative}}},
      {"d", "ER positive.", {}},
  };
  const auto tois = default_tois();
  const auto task = build_task(docs, tois[0], Settings{});
  CHECK(task.toi == "ER");
  CHECK(task.prepared.size() == 2);
  CHECK(task.positive == std::vector<int>{1, 0});
  CHECK(task.excluded_not_found == 1);
  CHECK(task.excluded_unknown == 1);
}

TEST_CASE("comparison shares folds and reports every method") {
  using namespace rwov::experiment;
  const auto docs = small_corpus(90, 21);
  const auto settings = fast_settings();
  const auto cmp = run_comparison(docs, default_tois(), {"rwov-svm", "svm(1,2)", "nope(1)"}, settings);
  REQUIRE(cmp.results.size() == 3);
  CHECK(!cmp.results[0].failed);
  CHECK(!cmp.results[1].failed);
  CHECK(cmp.results[2].failed);
  CHECK(cmp.class_labels.size() == 6);
  for (const auto& task : cmp.tasks) CHECK(cmp.folds.at(task.toi) == make_folds(task, settings));
  // pooled ids are the fold test sets in order, identical across methods
  for (std::size_t c = 0; c < cmp.results[0].classes.size(); ++c) {
    CHECK(cmp.results[0].classes[c].pooled_ids == cmp.results[1].classes[c].pooled_ids);
  }
  const auto csv = report_csv(cmp);
  CHECK(csv.rfind("method,ER+ F1,ER+ AUC,ER- F1,ER- AUC", 0) == 0);
  CHECK(csv.find("FAILED") != std::string::npos);
  CHECK(csv.find("SVM(1,2),") != std::string::npos);
  for (const auto& r : cmp.results) {
    for (const auto& cls : r.classes) {
      CHECK(cls.ci_f1.lo <= cls.pooled_f1);
      CHECK(cls.pooled_f1 <= cls.ci_f1.hi);
      CHECK(cls.ci_auc.lo <= cls.pooled_auc);
      CHECK(cls.pooled_auc <= cls.ci_auc.hi);
      CHECK(cls.roc.front() == RocPoint{0, 0});
      CHECK(cls.roc.back() == RocPoint{1, 1});
      CHECK(cls.folds.size() == settings.folds);
    }
  }
  CHECK(ci_csv(cmp).rfind("method,class,metric,point,lo,hi\n", 0) == 0);
  CHECK(roc_csv(cmp).rfind("method,class,fpr,tpr\n", 0) == 0);
}

TEST_CASE("best marks: a dominant method takes every column") {
  using namespace rwov::experiment;
  Comparison cmp;
  cmp.class_labels = {"ER+", "ER-"};
  for (int m = 0; m < 2; ++m) {
    MethodResult r;
    r.id = m ? "b" : "a";
    r.label = r.id;
    for (int c = 0; c < 2; ++c) {
      ClassResult cls;
      cls.key = {"ER", c == 0};
      cls.mean.f1 = m ? 0.9 : 0.5;
      cls.mean.auc = m ? 0.95 : 0.6;
      r.classes.push_back(cls);
    }
    cmp.results.push_back(r);
  }
  const auto marks = best_marks(cmp, false);
  CHECK(marks[1] == std::vector<bool>{true, true});
  CHECK(marks[0] == std::vector<bool>{false, false});
  cmp.results[0].classes[0].mean.f1 = 0.9;
  CHECK(best_marks(cmp, false)[0][0]);
  CHECK(best_marks(cmp, false)[1][0]);
}

TEST_CASE("single method report has one row") {
  using namespace rwov::experiment;
  const auto docs = small_corpus(60, 2);
  const auto cmp = run_comparison(docs, default_tois(), {"rwov-svm"}, fast_settings());
  const auto csv = report_csv(cmp);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 2);
}
