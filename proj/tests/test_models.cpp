#include <cmath>

#include "doctest.h"
#include "support.hpp"

#include "rwov/models.hpp"

using namespace rwov;
using namespace rwov::models;

namespace {

Matrix rows(std::initializer_list<std::initializer_list<double>> init) {
  Matrix m(init.size(), init.begin()->size());
  std::size_t r = 0;
  for (const auto& row : init) {
    std::size_t c = 0;
    for (double v : row) m(r, c++) = v;
    ++r;
  }
  return m;
}

Matrix random_matrix(Rng& rng, std::size_t r, std::size_t c) {
  Matrix m(r, c);
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = 0; j < c; ++j) m(i, j) = rng.uniform(-1.0, 1.0);
  }
  return m;
}

}  // namespace

TEST_CASE("balanced class weights") {
  std::vector<int> y(100, 1);
  for (int i = 0; i < 10; ++i) y[i] = -1;
  const auto w = balanced_class_weights(y);
  CHECK(w.negative / w.positive == doctest::Approx(9.0));
  CHECK(w.positive == doctest::Approx(100.0 / 180.0));
}

TEST_CASE("svm separates a separable toy set") {
  const auto x = rows({{2, 2}, {3, 1}, {-2, -1}, {-1, -3}});
  const std::vector<int> y = {1, 1, -1, -1};
  SvmHyper h;
  h.seed = 4;
  const auto m = svm_train(x, y, h);
  for (std::size_t i = 0; i < 4; ++i) CHECK((svm_score(m, x.row(i)) >= 0 ? 1 : -1) == y[i]);
  for (std::size_t e = 1; e < m.loss_history.size(); ++e) CHECK(m.loss_history[e] <= m.loss_history[e - 1]);
}

TEST_CASE("svm on identical rows falls back to the bias") {
  const auto x = rows({{1, 1}, {1, 1}, {1, 1}});
  const std::vector<int> y = {1, -1, 1};
  const auto m = svm_train(x, y, SvmHyper{});
  CHECK(svm_score(m, x.row(0)) == svm_score(m, x.row(1)));
}

TEST_CASE("svm score is affine") {
  LinearSvm m;
  m.weights = {1.0, 0.0};
  const std::vector<double> x = {2.0, 5.0};
  CHECK(svm_score(m, x) == 2.0);
  m.bias = 0.25;
  CHECK(svm_score(m, std::vector<double>{0.0, 0.0}) == 0.25);
  CHECK(svm_score(m, std::vector<double>{4.0, 10.0}) == 2.0 * 2.0 + 0.25);
  CHECK(testing::error_of([&] { svm_score(m, std::vector<double>{1.0}); }) == ErrorCode::DimensionMismatch);
}

TEST_CASE("svm training errors") {
  const auto x = rows({{1}, {2}});
  CHECK(testing::error_of([&] { svm_train(x, std::vector<int>{1, 1}, SvmHyper{}); }) == ErrorCode::SingleClassInput);
  CHECK(testing::error_of([&] { svm_train(x, std::vector<int>{1, -1, 1}, SvmHyper{}); }) ==
        ErrorCode::DimensionMismatch);
}

TEST_CASE("svm predictions ignore appended zero columns") {
  Rng rng(12);
  const auto x = random_matrix(rng, 30, 3);
  std::vector<int> y(30);
  for (std::size_t i = 0; i < 30; ++i) y[i] = x(i, 0) + 0.3 * x(i, 1) > 0 ? 1 : -1;
  Matrix wide(30, 5);
  for (std::size_t i = 0; i < 30; ++i) {
    for (std::size_t j = 0; j < 3; ++j) wide(i, j) = x(i, j);
  }
  const auto a = svm_train(x, y, SvmHyper{});
  const auto b = svm_train(wide, y, SvmHyper{});
  for (std::size_t i = 0; i < 30; ++i) CHECK((svm_score(a, x.row(i)) >= 0) == (svm_score(b, wide.row(i)) >= 0));
}

TEST_CASE("svm training is deterministic") {
  Rng rng(1);
  const auto x = random_matrix(rng, 20, 4);
  std::vector<int> y(20);
  for (std::size_t i = 0; i < 20; ++i) y[i] = x(i, 2) > 0 ? 1 : -1;
  SvmHyper h;
  h.seed = 77;
  const auto a = svm_train(x, y, h);
  const auto b = svm_train(x, y, h);
  CHECK(a.weights == b.weights);
  CHECK(a.bias == b.bias);
}

TEST_CASE("network learns XOR") {
  const auto x = rows({{0, 0}, {0, 1}, {1, 0}, {1, 1}});
  const std::vector<int> y = {0, 1, 1, 0};
  MlpHyper h;
  h.epochs = 600;
  h.batch_size = 4;
  h.learning_rate = 0.05;
  h.l2 = 0.0;
  h.seed = 3;
  const std::size_t sizes[] = {2, 8, 1};
  const auto m = mlp_train(x, y, sizes, h);
  for (std::size_t i = 0; i < 4; ++i) CHECK((mlp_logit(m, x.row(i)) >= 0 ? 1 : 0) == y[i]);
  CHECK(m.loss_history.back() <= m.loss_history.front());
}

TEST_CASE("zero epochs returns the initialization") {
  const auto x = rows({{0, 1}, {1, 0}});
  const std::vector<int> y = {0, 1};
  MlpHyper h;
  h.epochs = 0;
  h.seed = 5;
  const std::size_t sizes[] = {2, 3, 1};
  const auto trained = mlp_train(x, y, sizes, h);
  const auto init = mlp_init(sizes, h);
  CHECK(mlp_parameters(trained) == mlp_parameters(init));
}

TEST_CASE("network training is deterministic") {
  Rng rng(2);
  const auto x = random_matrix(rng, 24, 3);
  std::vector<int> y(24);
  for (std::size_t i = 0; i < 24; ++i) y[i] = x(i, 0) * x(i, 1) > 0 ? 1 : 0;
  MlpHyper h;
  h.epochs = 20;
  h.seed = 9;
  const std::size_t sizes[] = {3, 5, 1};
  CHECK(mlp_parameters(mlp_train(x, y, sizes, h)) == mlp_parameters(mlp_train(x, y, sizes, h)));
}

TEST_CASE("forward pass by hand") {
  const std::size_t sizes[] = {2, 2, 1};
  auto m = mlp_init(sizes, MlpHyper{});
  // hidden: relu([1 -1; 0.5 2] x + [0, -1]); output: [2 -3] h + 0.5
  m.weights[0] = rows({{1, -1}, {0.5, 2}});
  m.biases[0] = {0.0, -1.0};
  m.weights[1] = rows({{2, -3}});
  m.biases[1] = {0.5};
  const std::vector<double> x = {3.0, 1.0};
  // h = relu([3 - 1, 1.5 + 2 - 1]) = [2, 2.5]; logit = 4 - 7.5 + 0.5 = -3
  CHECK(mlp_logit(m, x) == doctest::Approx(-3.0));
  CHECK(mlp_predict_proba(m, x) == doctest::Approx(1.0 / (1.0 + std::exp(3.0))));
  const std::vector<double> x2 = {0.0, 1.0};
  // h = relu([-1, 1]) = [0, 1]; logit = -3 + 0.5
  CHECK(mlp_logit(m, x2) == doctest::Approx(-2.5));
  CHECK(mlp_predict_proba(m, x2) == doctest::Approx(1.0 / (1.0 + std::exp(2.5))));
}

TEST_CASE("zero network predicts one half and bias is monotone") {
  const std::size_t sizes[] = {3, 4, 1};
  auto m = mlp_init(sizes, MlpHyper{});
  mlp_set_parameters(m, std::vector<double>(m.parameter_count(), 0.0));
  const std::vector<double> x = {1.0, -2.0, 0.5};
  CHECK(mlp_predict_proba(m, x) == 0.5);
  double prev = mlp_predict_proba(m, x);
  for (int i = 0; i < 5; ++i) {
    m.biases.back()[0] += 0.5;
    const double p = mlp_predict_proba(m, x);
    CHECK(p > prev);
    CHECK(p < 1.0);
    prev = p;
  }
  CHECK(testing::error_of([&] { mlp_logit(m, std::vector<double>{1.0}); }) == ErrorCode::DimensionMismatch);
}

TEST_CASE("initialization stays within the Glorot bound") {
  const std::size_t sizes[] = {10, 6, 1};
  const auto m = mlp_init(sizes, MlpHyper{});
  const double b0 = std::sqrt(6.0 / 16.0);
  for (double w : m.weights[0].data()) CHECK(std::abs(w) <= b0);
  for (double b : m.biases[0]) CHECK(b == 0.0);
}

TEST_CASE("architecture validation") {
  CHECK(testing::error_of([] { validate_architecture(std::vector<std::size_t>{3}); }) == ErrorCode::InvalidArchitecture);
  CHECK(testing::error_of([] { validate_architecture(std::vector<std::size_t>{3, 2}); }) ==
        ErrorCode::InvalidArchitecture);
  CHECK(testing::error_of([] { validate_architecture(std::vector<std::size_t>{3, 0, 1}); }) ==
        ErrorCode::InvalidArchitecture);
  validate_architecture(std::vector<std::size_t>{3, 1});
  const auto x = rows({{1}, {2}});
  const std::size_t sizes[] = {1, 1};
  CHECK(testing::error_of([&] { mlp_train(x, std::vector<int>{0, 0}, sizes, MlpHyper{}); }) ==
        ErrorCode::SingleClassInput);
}

TEST_CASE("gradient check on a 2-3-1 network") {
  Rng rng(6);
  const auto x = random_matrix(rng, 5, 2);
  const std::vector<int> y = {0, 1, 1, 0, 1};
  const std::size_t sizes[] = {2, 3, 1};
  MlpHyper h;
  h.seed = 1;
  const auto m = mlp_init(sizes, h);
  CHECK(mlp_gradient_check(m, x, y, 1e-5) < 1e-4);

  auto g = mlp_gradient(m, x, y);
  g[0] += 1.0;
  CHECK(max_relative_error(g, mlp_numeric_gradient(m, x, y, 1e-5)) > 1e-2);
}

TEST_CASE("gradients vanish together at a flat point") {
  const std::size_t sizes[] = {1, 1};
  auto m = mlp_init(sizes, MlpHyper{});
  m.hyper.l2 = 0.0;
  mlp_set_parameters(m, std::vector<double>{0.0, 0.0});
  // symmetric labels on the zero input: BCE gradient is zero at logit 0
  const auto x = rows({{0}, {0}});
  const std::vector<int> y = {0, 1};
  for (double v : mlp_gradient(m, x, y)) CHECK(std::abs(v) < 1e-12);
  for (double v : mlp_numeric_gradient(m, x, y, 1e-5)) CHECK(std::abs(v) < 1e-9);
}

TEST_CASE("grid search prefers a hidden layer on XOR") {
  Matrix x(24, 2);
  std::vector<int> y(24);
  for (std::size_t i = 0; i < 24; ++i) {
    const int a = static_cast<int>(i % 2), b = static_cast<int>((i / 2) % 2);
    x(i, 0) = a + 0.01 * static_cast<double>(i % 5);
    x(i, 1) = b - 0.01 * static_cast<double>(i % 3);
    y[i] = a ^ b;
  }
  MlpHyper h;
  h.epochs = 300;
  h.batch_size = 8;
  h.learning_rate = 0.05;
  h.l2 = 0.0;
  h.seed = 2;
  const auto r = grid_search_mlp(x, y, {{}, {8}}, 3, h);
  CHECK(r.best == 1);
  CHECK(r.mean_f1[1] > r.mean_f1[0]);
}

TEST_CASE("grid search skips invalid candidates and breaks ties by order") {
  Rng rng(4);
  const auto x = random_matrix(rng, 18, 2);
  std::vector<int> y(18);
  for (std::size_t i = 0; i < 18; ++i) y[i] = x(i, 0) > 0 ? 1 : 0;
  MlpHyper h;
  h.epochs = 10;
  const auto r = grid_search_mlp(x, y, {{0}, {4}}, 3, h);
  CHECK(!r.viable[0]);
  CHECK(r.best == 1);
  const auto tie = grid_search_mlp(x, y, {{4}, {4}}, 3, h);
  CHECK(tie.mean_f1[0] == tie.mean_f1[1]);
  CHECK(tie.best == 0);
  CHECK(testing::error_of([&] { grid_search_mlp(x, y, {{4}}, 3, h); }) == ErrorCode::InvalidConfig);
}

TEST_CASE("model persistence round-trips exactly") {
  Rng rng(10);
  const auto x = random_matrix(rng, 16, 3);
  std::vector<int> ys(16), yb(16);
  for (std::size_t i = 0; i < 16; ++i) {
    yb[i] = x(i, 0) > 0 ? 1 : 0;
    ys[i] = yb[i] ? 1 : -1;
  }
  const auto svm = svm_train(x, ys, SvmHyper{});
  const auto svm2 = parse_svm(serialize_svm(svm));
  CHECK(svm2.weights == svm.weights);
  CHECK(svm2.bias == svm.bias);
  CHECK(serialize_svm(svm2) == serialize_svm(svm));

  MlpHyper h;
  h.epochs = 5;
  const std::size_t sizes[] = {3, 4, 2, 1};
  const auto mlp = mlp_train(x, yb, sizes, h);
  const auto mlp2 = parse_mlp(serialize_mlp(mlp));
  CHECK(mlp_parameters(mlp2) == mlp_parameters(mlp));
  CHECK(mlp2.layer_sizes == mlp.layer_sizes);

  auto text = serialize_mlp(mlp);
  text.replace(0, 5, "mlp 9");
  CHECK(testing::error_of([&] { parse_mlp(text); }) == ErrorCode::VersionMismatch);
  auto stext = serialize_svm(svm);
  stext.replace(0, 5, "svm 2");
  CHECK(testing::error_of([&] { parse_svm(stext); }) == ErrorCode::VersionMismatch);
}
