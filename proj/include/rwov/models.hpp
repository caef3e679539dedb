#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "rwov/common.hpp"

namespace rwov::models {

// ---------------------------------------------------------------------------
// Class-weighted linear SVM

struct SvmHyper {
  double lambda = 1e-3;  // L2 regularization strength
  std::size_t epochs = 60;
  double eta0 = 0.1;     // initial step size
  std::uint64_t seed = 0;
};

struct LinearSvm {
  std::vector<double> weights;
  double bias = 0.0;
  double weight_positive = 1.0;  // hinge-loss multiplier for y = +1
  double weight_negative = 1.0;  // hinge-loss multiplier for y = -1
  SvmHyper hyper;
  // Objective of the retained iterate after each epoch; non-increasing.
  std::vector<double> loss_history;
};

struct ClassWeights {
  double positive = 1.0;
  double negative = 1.0;
};

// "Balanced" weights m / (2 * m_class) for labels in {-1, +1}.
ClassWeights balanced_class_weights(std::span<const int> y);

// lambda * ||w||^2 + (1/m) * sum_i c_{y_i} * max(0, 1 - y_i (w.x_i + b)).
double svm_objective(const LinearSvm& model, const Matrix& x, std::span<const int> y);

// Seeded stochastic subgradient descent with iterate averaging. After every
// epoch the averaged iterate replaces the retained model only if it lowers
// the objective. Labels must be -1/+1.
LinearSvm svm_train(const Matrix& x, std::span<const int> y, const SvmHyper& hyper);

// w.x + b. Class +1 when the margin is >= 0.
double svm_score(const LinearSvm& model, std::span<const double> x);

// ---------------------------------------------------------------------------
// Feed-forward network: rectifier hidden layers, logistic output.

struct MlpHyper {
  double learning_rate = 0.01;
  std::size_t epochs = 150;
  std::size_t batch_size = 16;
  double l2 = 1e-4;  // penalty (l2/2) * sum of squared weights
  std::uint64_t seed = 0;
};

struct Mlp {
  std::vector<std::size_t> layer_sizes;  // input, hidden..., 1
  std::vector<Matrix> weights;           // layer l: layer_sizes[l+1] x layer_sizes[l]
  std::vector<std::vector<double>> biases;
  MlpHyper hyper;
  std::vector<double> loss_history;

  std::size_t input_size() const { return layer_sizes.front(); }
  std::size_t parameter_count() const;
};

// Throws InvalidArchitecture unless sizes are positive, there are at least
// two layers and the last has width 1.
void validate_architecture(std::span<const std::size_t> layer_sizes);

// Weights uniform in +-sqrt(6 / (fan_in + fan_out)), biases zero.
Mlp mlp_init(std::span<const std::size_t> layer_sizes, const MlpHyper& hyper);

// Mean binary cross-entropy plus L2 penalty, mini-batch Adam updates with
// seeded shuffling. The parameters with the lowest full-batch loss seen at an
// epoch boundary (initialization included) are returned. Labels 0/1.
Mlp mlp_train(const Matrix& x, std::span<const int> y, std::span<const std::size_t> layer_sizes,
              const MlpHyper& hyper);

double mlp_logit(const Mlp& model, std::span<const double> x);
// Logistic of the logit, kept strictly inside (0, 1).
double mlp_predict_proba(const Mlp& model, std::span<const double> x);

double mlp_loss(const Mlp& model, const Matrix& x, std::span<const int> y);

// Parameters flattened layer by layer: weights row-major, then biases.
std::vector<double> mlp_parameters(const Mlp& model);
void mlp_set_parameters(Mlp& model, std::span<const double> params);

// Backpropagated gradient of mlp_loss, same layout as mlp_parameters.
std::vector<double> mlp_gradient(const Mlp& model, const Matrix& x, std::span<const int> y);
// Central differences of mlp_loss.
std::vector<double> mlp_numeric_gradient(const Mlp& model, const Matrix& x, std::span<const int> y,
                                         double epsilon);

// max_i |a_i - b_i| / max(|a_i| + |b_i|, 1e-6)
double max_relative_error(std::span<const double> a, std::span<const double> b);

double mlp_gradient_check(const Mlp& model, const Matrix& x, std::span<const int> y, double epsilon);

struct GridSearchResult {
  std::size_t best = 0;                          // index into candidates
  std::vector<double> mean_f1;                   // per candidate
  std::vector<bool> viable;                      // false when training failed
  std::vector<std::size_t> best_hidden;
};

// Each candidate is a list of hidden-layer widths (possibly empty). Scores are
// stratified k-fold mean positive-class F1; the first listed wins ties.
GridSearchResult grid_search_mlp(const Matrix& x, std::span<const int> y,
                                 const std::vector<std::vector<std::size_t>>& candidates, std::size_t folds,
                                 const MlpHyper& hyper);

// ---------------------------------------------------------------------------
// Persistence: version line, header block, then row-major weights at 17
// significant digits.

inline constexpr int kModelFormatVersion = 1;

std::string serialize_svm(const LinearSvm& model);
std::string serialize_mlp(const Mlp& model);
LinearSvm parse_svm(std::string_view content);
Mlp parse_mlp(std::string_view content);

}  // namespace rwov::models
