#include "rwov/models.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <sstream>

#include "rwov/metrics.hpp"

namespace rwov::models {

namespace {

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

void check_rows(const Matrix& x, std::size_t n_labels) {
  if (x.rows() != n_labels) {
    throw Error(ErrorCode::DimensionMismatch,
                std::to_string(x.rows()) + " feature rows but " + std::to_string(n_labels) + " labels");
  }
}

}  // namespace

ClassWeights balanced_class_weights(std::span<const int> y) {
  const auto m = static_cast<double>(y.size());
  const auto m_pos = static_cast<double>(std::count(y.begin(), y.end(), 1));
  const double m_neg = m - m_pos;
  if (m_pos == 0.0 || m_neg == 0.0) throw Error(ErrorCode::SingleClassInput, "training labels contain one class");
  return {m / (2.0 * m_pos), m / (2.0 * m_neg)};
}

double svm_score(const LinearSvm& model, std::span<const double> x) {
  if (x.size() != model.weights.size()) {
    throw Error(ErrorCode::DimensionMismatch, "SVM expects " + std::to_string(model.weights.size()) +
                                                  " features, got " + std::to_string(x.size()));
  }
  return dot(model.weights, x) + model.bias;
}

double svm_objective(const LinearSvm& model, const Matrix& x, std::span<const int> y) {
  check_rows(x, y.size());
  double hinge = 0.0;
  for (std::size_t i = 0; i < x.rows(); ++i) {
    const double margin = y[i] * svm_score(model, x.row(i));
    const double c = y[i] > 0 ? model.weight_positive : model.weight_negative;
    hinge += c * std::max(0.0, 1.0 - margin);
  }
  return model.hyper.lambda * dot(model.weights, model.weights) + hinge / static_cast<double>(x.rows());
}

LinearSvm svm_train(const Matrix& x, std::span<const int> y, const SvmHyper& hyper) {
  check_rows(x, y.size());
  if (y.size() < 2) throw Error(ErrorCode::SingleClassInput, "need at least two training samples");
  for (int label : y) {
    if (label != 1 && label != -1) throw Error(ErrorCode::InvalidConfig, "SVM labels must be -1 or +1");
  }
  const auto weights = balanced_class_weights(y);
  const std::size_t dim = x.cols();

  LinearSvm best;
  best.weights.assign(dim, 0.0);
  best.weight_positive = weights.positive;
  best.weight_negative = weights.negative;
  best.hyper = hyper;
  double best_loss = svm_objective(best, x, y);

  std::vector<double> w(dim, 0.0), w_avg(dim, 0.0);
  double b = 0.0, b_avg = 0.0;
  std::vector<std::size_t> order(x.rows());
  std::iota(order.begin(), order.end(), 0);
  Rng rng(hyper.seed);
  std::size_t t = 0;

  LinearSvm candidate = best;
  for (std::size_t epoch = 0; epoch < hyper.epochs; ++epoch) {
    rng.shuffle(order);
    for (std::size_t i : order) {
      ++t;
      const double eta = hyper.eta0 / (1.0 + hyper.eta0 * 2.0 * hyper.lambda * static_cast<double>(t));
      const auto row = x.row(i);
      const double margin = y[i] * (dot(w, row) + b);
      const double shrink = 1.0 - eta * 2.0 * hyper.lambda;
      for (auto& wj : w) wj *= shrink;
      if (margin < 1.0) {
        const double step = eta * (y[i] > 0 ? weights.positive : weights.negative) * y[i];
        for (std::size_t j = 0; j < dim; ++j) w[j] += step * row[j];
        b += step;
      }
      // Running mean of all iterates.
      const double mix = 1.0 / static_cast<double>(t);
      for (std::size_t j = 0; j < dim; ++j) w_avg[j] += mix * (w[j] - w_avg[j]);
      b_avg += mix * (b - b_avg);
    }
    candidate.weights = w_avg;
    candidate.bias = b_avg;
    const double loss = svm_objective(candidate, x, y);
    if (loss < best_loss) {
      best_loss = loss;
      best.weights = candidate.weights;
      best.bias = candidate.bias;
    }
    best.loss_history.push_back(best_loss);
  }
  return best;
}

// ---------------------------------------------------------------------------

std::size_t Mlp::parameter_count() const {
  std::size_t n = 0;
  for (std::size_t l = 0; l + 1 < layer_sizes.size(); ++l) n += layer_sizes[l + 1] * (layer_sizes[l] + 1);
  return n;
}

void validate_architecture(std::span<const std::size_t> layer_sizes) {
  if (layer_sizes.size() < 2) throw Error(ErrorCode::InvalidArchitecture, "need an input and an output layer");
  if (layer_sizes.back() != 1) throw Error(ErrorCode::InvalidArchitecture, "output layer must have width 1");
  for (auto s : layer_sizes) {
    if (s == 0) throw Error(ErrorCode::InvalidArchitecture, "layer widths must be positive");
  }
}

Mlp mlp_init(std::span<const std::size_t> layer_sizes, const MlpHyper& hyper) {
  validate_architecture(layer_sizes);
  Mlp model;
  model.layer_sizes.assign(layer_sizes.begin(), layer_sizes.end());
  model.hyper = hyper;
  Rng rng(derive_seed(hyper.seed, "mlp/init"));
  for (std::size_t l = 0; l + 1 < layer_sizes.size(); ++l) {
    const std::size_t fan_in = layer_sizes[l], fan_out = layer_sizes[l + 1];
    const double limit = std::sqrt(6.0 / static_cast<double>(fan_in + fan_out));
    Matrix w(fan_out, fan_in);
    for (std::size_t r = 0; r < fan_out; ++r) {
      for (std::size_t c = 0; c < fan_in; ++c) w(r, c) = rng.uniform(-limit, limit);
    }
    model.weights.push_back(std::move(w));
    model.biases.emplace_back(fan_out, 0.0);
  }
  return model;
}

namespace {

// Pre-activations and activations per layer for one sample.
struct ForwardTrace {
  std::vector<std::vector<double>> activations;  // [0] = input
  std::vector<std::vector<double>> pre;          // per weight layer
};

ForwardTrace forward(const Mlp& model, std::span<const double> x) {
  ForwardTrace trace;
  trace.activations.emplace_back(x.begin(), x.end());
  const std::size_t n_layers = model.weights.size();
  for (std::size_t l = 0; l < n_layers; ++l) {
    const auto& w = model.weights[l];
    const auto& in = trace.activations.back();
    std::vector<double> z(w.rows());
    for (std::size_t r = 0; r < w.rows(); ++r) z[r] = dot(w.row(r), in) + model.biases[l][r];
    std::vector<double> a = z;
    if (l + 1 < n_layers) {
      for (auto& v : a) v = std::max(0.0, v);
    }
    trace.pre.push_back(std::move(z));
    trace.activations.push_back(std::move(a));
  }
  return trace;
}

void check_input(const Mlp& model, std::span<const double> x) {
  if (x.size() != model.input_size()) {
    throw Error(ErrorCode::DimensionMismatch, "network expects " + std::to_string(model.input_size()) +
                                                  " features, got " + std::to_string(x.size()));
  }
}

// log(1 + exp(z)) without overflow.
double softplus(double z) { return z > 0 ? z + std::log1p(std::exp(-z)) : std::log1p(std::exp(z)); }

double sigmoid(double z) {
  if (z >= 0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

void check_binary_labels(std::span<const int> y) {
  bool pos = false, neg = false;
  for (int v : y) {
    if (v != 0 && v != 1) throw Error(ErrorCode::InvalidConfig, "network labels must be 0 or 1");
    (v ? pos : neg) = true;
  }
  if (!pos || !neg) throw Error(ErrorCode::SingleClassInput, "training labels contain one class");
}

double l2_penalty(const Mlp& model) {
  double s = 0.0;
  for (const auto& w : model.weights) s += dot(w.data(), w.data());
  return 0.5 * model.hyper.l2 * s;
}

// Accumulates d(mean BCE over `rows`)/d(params) into grad (flat layout),
// without the L2 term.
void accumulate_data_gradient(const Mlp& model, const Matrix& x, std::span<const int> y,
                              std::span<const std::size_t> rows, std::vector<double>& grad) {
  const std::size_t n_layers = model.weights.size();
  std::vector<std::size_t> w_offset(n_layers), b_offset(n_layers);
  std::size_t off = 0;
  for (std::size_t l = 0; l < n_layers; ++l) {
    w_offset[l] = off;
    off += model.weights[l].rows() * model.weights[l].cols();
    b_offset[l] = off;
    off += model.biases[l].size();
  }
  const double inv_n = 1.0 / static_cast<double>(rows.size());
  for (std::size_t i : rows) {
    const auto trace = forward(model, x.row(i));
    std::vector<double> delta{(sigmoid(trace.pre.back()[0]) - y[i]) * inv_n};
    for (std::size_t l = n_layers; l-- > 0;) {
      const auto& w = model.weights[l];
      const auto& in = trace.activations[l];
      for (std::size_t r = 0; r < w.rows(); ++r) {
        const double d = delta[r];
        if (d == 0.0) continue;
        double* gw = grad.data() + w_offset[l] + r * w.cols();
        for (std::size_t c = 0; c < w.cols(); ++c) gw[c] += d * in[c];
        grad[b_offset[l] + r] += d;
      }
      if (l == 0) break;
      std::vector<double> prev(w.cols(), 0.0);
      for (std::size_t r = 0; r < w.rows(); ++r) {
        if (delta[r] == 0.0) continue;
        const auto wr = w.row(r);
        for (std::size_t c = 0; c < w.cols(); ++c) prev[c] += delta[r] * wr[c];
      }
      const auto& z_prev = trace.pre[l - 1];
      for (std::size_t c = 0; c < prev.size(); ++c) {
        if (z_prev[c] <= 0.0) prev[c] = 0.0;
      }
      delta = std::move(prev);
    }
  }
}

void add_l2_gradient(const Mlp& model, std::vector<double>& grad) {
  std::size_t off = 0;
  for (std::size_t l = 0; l < model.weights.size(); ++l) {
    const auto& data = model.weights[l].data();
    for (std::size_t k = 0; k < data.size(); ++k) grad[off + k] += model.hyper.l2 * data[k];
    off += data.size() + model.biases[l].size();
  }
}

}  // namespace

double mlp_logit(const Mlp& model, std::span<const double> x) {
  check_input(model, x);
  return forward(model, x).pre.back()[0];
}

double mlp_predict_proba(const Mlp& model, std::span<const double> x) {
  const double p = sigmoid(mlp_logit(model, x));
  return std::clamp(p, std::numeric_limits<double>::min(), std::nextafter(1.0, 0.0));
}

double mlp_loss(const Mlp& model, const Matrix& x, std::span<const int> y) {
  check_rows(x, y.size());
  double total = 0.0;
  for (std::size_t i = 0; i < x.rows(); ++i) {
    const double z = mlp_logit(model, x.row(i));
    total += softplus(z) - y[i] * z;
  }
  return total / static_cast<double>(x.rows()) + l2_penalty(model);
}

std::vector<double> mlp_parameters(const Mlp& model) {
  std::vector<double> params;
  params.reserve(model.parameter_count());
  for (std::size_t l = 0; l < model.weights.size(); ++l) {
    params.insert(params.end(), model.weights[l].data().begin(), model.weights[l].data().end());
    params.insert(params.end(), model.biases[l].begin(), model.biases[l].end());
  }
  return params;
}

void mlp_set_parameters(Mlp& model, std::span<const double> params) {
  if (params.size() != model.parameter_count()) {
    throw Error(ErrorCode::DimensionMismatch, "parameter vector has wrong length");
  }
  std::size_t off = 0;
  for (std::size_t l = 0; l < model.weights.size(); ++l) {
    auto& w = model.weights[l];
    for (std::size_t r = 0; r < w.rows(); ++r) {
      for (std::size_t c = 0; c < w.cols(); ++c) w(r, c) = params[off++];
    }
    for (auto& b : model.biases[l]) b = params[off++];
  }
}

std::vector<double> mlp_gradient(const Mlp& model, const Matrix& x, std::span<const int> y) {
  check_rows(x, y.size());
  std::vector<double> grad(model.parameter_count(), 0.0);
  std::vector<std::size_t> rows(x.rows());
  std::iota(rows.begin(), rows.end(), 0);
  accumulate_data_gradient(model, x, y, rows, grad);
  add_l2_gradient(model, grad);
  return grad;
}

std::vector<double> mlp_numeric_gradient(const Mlp& model, const Matrix& x, std::span<const int> y,
                                         double epsilon) {
  auto params = mlp_parameters(model);
  Mlp probe = model;
  std::vector<double> grad(params.size());
  for (std::size_t k = 0; k < params.size(); ++k) {
    const double original = params[k];
    params[k] = original + epsilon;
    mlp_set_parameters(probe, params);
    const double up = mlp_loss(probe, x, y);
    params[k] = original - epsilon;
    mlp_set_parameters(probe, params);
    const double down = mlp_loss(probe, x, y);
    params[k] = original;
    grad[k] = (up - down) / (2.0 * epsilon);
  }
  return grad;
}

double max_relative_error(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw Error(ErrorCode::DimensionMismatch, "gradient vectors differ in length");
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double denom = std::max(std::abs(a[i]) + std::abs(b[i]), 1e-6);
    worst = std::max(worst, std::abs(a[i] - b[i]) / denom);
  }
  return worst;
}

double mlp_gradient_check(const Mlp& model, const Matrix& x, std::span<const int> y, double epsilon) {
  return max_relative_error(mlp_gradient(model, x, y), mlp_numeric_gradient(model, x, y, epsilon));
}

Mlp mlp_train(const Matrix& x, std::span<const int> y, std::span<const std::size_t> layer_sizes,
              const MlpHyper& hyper) {
  validate_architecture(layer_sizes);
  check_rows(x, y.size());
  check_binary_labels(y);
  if (layer_sizes.front() != x.cols()) {
    throw Error(ErrorCode::DimensionMismatch, "input layer width " + std::to_string(layer_sizes.front()) +
                                                  " but data has " + std::to_string(x.cols()) + " features");
  }
  if (hyper.batch_size == 0) throw Error(ErrorCode::InvalidConfig, "batch size must be positive");

  Mlp model = mlp_init(layer_sizes, hyper);
  auto params = mlp_parameters(model);
  auto best_params = params;
  double best_loss = mlp_loss(model, x, y);
  model.loss_history.push_back(best_loss);

  // Adam moment estimates.
  constexpr double beta1 = 0.9, beta2 = 0.999, adam_eps = 1e-8;
  std::vector<double> m1(params.size(), 0.0), m2(params.size(), 0.0);
  std::size_t step = 0;

  std::vector<std::size_t> order(x.rows());
  std::iota(order.begin(), order.end(), 0);
  Rng rng(derive_seed(hyper.seed, "mlp/shuffle"));
  std::vector<double> grad(params.size());

  for (std::size_t epoch = 0; epoch < hyper.epochs; ++epoch) {
    rng.shuffle(order);
    for (std::size_t start = 0; start < order.size(); start += hyper.batch_size) {
      const std::size_t end = std::min(start + hyper.batch_size, order.size());
      std::span<const std::size_t> batch(order.data() + start, end - start);
      std::fill(grad.begin(), grad.end(), 0.0);
      accumulate_data_gradient(model, x, y, batch, grad);
      add_l2_gradient(model, grad);

      ++step;
      const double c1 = 1.0 - std::pow(beta1, static_cast<double>(step));
      const double c2 = 1.0 - std::pow(beta2, static_cast<double>(step));
      for (std::size_t k = 0; k < params.size(); ++k) {
        m1[k] = beta1 * m1[k] + (1.0 - beta1) * grad[k];
        m2[k] = beta2 * m2[k] + (1.0 - beta2) * grad[k] * grad[k];
        params[k] -= hyper.learning_rate * (m1[k] / c1) / (std::sqrt(m2[k] / c2) + adam_eps);
      }
      mlp_set_parameters(model, params);
    }
    const double loss = mlp_loss(model, x, y);
    if (loss < best_loss) {
      best_loss = loss;
      best_params = params;
    }
    model.loss_history.push_back(loss);
  }
  mlp_set_parameters(model, best_params);
  return model;
}

GridSearchResult grid_search_mlp(const Matrix& x, std::span<const int> y,
                                 const std::vector<std::vector<std::size_t>>& candidates, std::size_t folds,
                                 const MlpHyper& hyper) {
  if (candidates.size() < 2) throw Error(ErrorCode::InvalidConfig, "grid search needs at least two candidates");
  check_rows(x, y.size());
  const auto partition = metrics::stratified_kfold(y, folds, derive_seed(hyper.seed, "grid/split"));

  GridSearchResult result;
  result.mean_f1.assign(candidates.size(), 0.0);
  result.viable.assign(candidates.size(), false);
  bool any = false;
  for (std::size_t c = 0; c < candidates.size(); ++c) {
    std::vector<std::size_t> sizes{x.cols()};
    sizes.insert(sizes.end(), candidates[c].begin(), candidates[c].end());
    sizes.push_back(1);
    try {
      validate_architecture(sizes);
    } catch (const Error&) {
      continue;
    }
    double total = 0.0;
    for (std::size_t f = 0; f < partition.size(); ++f) {
      std::vector<bool> in_test(x.rows(), false);
      for (auto i : partition[f]) in_test[i] = true;
      std::vector<std::size_t> train_rows;
      std::vector<int> train_y;
      for (std::size_t i = 0; i < x.rows(); ++i) {
        if (!in_test[i]) {
          train_rows.push_back(i);
          train_y.push_back(y[i]);
        }
      }
      const auto model = mlp_train(x.select_rows(train_rows), train_y, sizes, hyper);
      std::vector<int> predicted, actual;
      for (auto i : partition[f]) {
        predicted.push_back(mlp_logit(model, x.row(i)) >= 0.0 ? 1 : 0);
        actual.push_back(y[i]);
      }
      total += metrics::f1_score(metrics::confusion(predicted, actual)).f1;
    }
    result.mean_f1[c] = total / static_cast<double>(partition.size());
    result.viable[c] = true;
    if (!any || result.mean_f1[c] > result.mean_f1[result.best]) result.best = c;
    any = true;
  }
  if (!any) throw Error(ErrorCode::InvalidArchitecture, "no viable candidate architecture");
  result.best_hidden = candidates[result.best];
  return result;
}

// ---------------------------------------------------------------------------

namespace {

std::string join_numbers(std::span<const double> values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ' ';
    out += format_double(values[i]);
  }
  return out;
}

double parse_double(const std::string& s) {
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) {
    throw Error(ErrorCode::MalformedRecord, "bad number '" + s + "' in model file");
  }
  return v;
}

std::uint64_t parse_uint(const std::string& s) {
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) {
    throw Error(ErrorCode::MalformedRecord, "bad integer '" + s + "' in model file");
  }
  return v;
}

// key -> whitespace separated values, in file order.
struct Block {
  std::string kind;
  std::vector<std::pair<std::string, std::vector<std::string>>> entries;

  const std::vector<std::string>& get(const std::string& key) const {
    for (const auto& [k, v] : entries) {
      if (k == key) return v;
    }
    throw Error(ErrorCode::MalformedRecord, "model file lacks '" + key + "'");
  }
  std::vector<const std::vector<std::string>*> all(const std::string& key) const {
    std::vector<const std::vector<std::string>*> out;
    for (const auto& [k, v] : entries) {
      if (k == key) out.push_back(&v);
    }
    return out;
  }
};

Block parse_block(std::string_view content, std::string_view expected_kind) {
  Block block;
  std::istringstream in{std::string(content)};
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (trim(line).empty()) continue;
    std::istringstream ls(line);
    std::string key;
    ls >> key;
    std::vector<std::string> values;
    for (std::string v; ls >> v;) values.push_back(v);
    if (first) {
      if (key != expected_kind || values.size() != 1) {
        throw Error(ErrorCode::MalformedRecord, "expected a '" + std::string(expected_kind) + " <version>' line");
      }
      if (values[0] != std::to_string(kModelFormatVersion)) {
        throw Error(ErrorCode::VersionMismatch, std::string(expected_kind) + " model version " + values[0] +
                                                    ", supported " + std::to_string(kModelFormatVersion));
      }
      block.kind = key;
      first = false;
      continue;
    }
    block.entries.emplace_back(key, std::move(values));
  }
  if (first) throw Error(ErrorCode::MalformedRecord, "empty model block");
  return block;
}

std::vector<double> parse_doubles(const std::vector<std::string>& fields) {
  std::vector<double> out;
  out.reserve(fields.size());
  for (const auto& f : fields) out.push_back(parse_double(f));
  return out;
}

const std::string& single(const std::vector<std::string>& v, const char* key) {
  if (v.size() != 1) throw Error(ErrorCode::MalformedRecord, std::string("'") + key + "' takes one value");
  return v[0];
}

}  // namespace

std::string serialize_svm(const LinearSvm& model) {
  std::ostringstream out;
  out << "svm " << kModelFormatVersion << "\n";
  out << "dim " << model.weights.size() << "\n";
  out << "lambda " << format_double(model.hyper.lambda) << "\n";
  out << "epochs " << model.hyper.epochs << "\n";
  out << "eta0 " << format_double(model.hyper.eta0) << "\n";
  out << "seed " << model.hyper.seed << "\n";
  out << "class_weights " << format_double(model.weight_positive) << " " << format_double(model.weight_negative)
      << "\n";
  out << "bias " << format_double(model.bias) << "\n";
  out << "weights " << join_numbers(model.weights) << "\n";
  return out.str();
}

LinearSvm parse_svm(std::string_view content) {
  const auto block = parse_block(content, "svm");
  LinearSvm model;
  const auto dim = parse_uint(single(block.get("dim"), "dim"));
  model.hyper.lambda = parse_double(single(block.get("lambda"), "lambda"));
  model.hyper.epochs = parse_uint(single(block.get("epochs"), "epochs"));
  model.hyper.eta0 = parse_double(single(block.get("eta0"), "eta0"));
  model.hyper.seed = parse_uint(single(block.get("seed"), "seed"));
  const auto cw = parse_doubles(block.get("class_weights"));
  if (cw.size() != 2) throw Error(ErrorCode::MalformedRecord, "class_weights takes two values");
  model.weight_positive = cw[0];
  model.weight_negative = cw[1];
  model.bias = parse_double(single(block.get("bias"), "bias"));
  model.weights = parse_doubles(block.get("weights"));
  if (model.weights.size() != dim) throw Error(ErrorCode::DimensionMismatch, "weights length differs from dim");
  return model;
}

std::string serialize_mlp(const Mlp& model) {
  std::ostringstream out;
  out << "mlp " << kModelFormatVersion << "\n";
  out << "layers";
  for (auto s : model.layer_sizes) out << " " << s;
  out << "\n";
  out << "learning_rate " << format_double(model.hyper.learning_rate) << "\n";
  out << "epochs " << model.hyper.epochs << "\n";
  out << "batch_size " << model.hyper.batch_size << "\n";
  out << "l2 " << format_double(model.hyper.l2) << "\n";
  out << "seed " << model.hyper.seed << "\n";
  for (std::size_t l = 0; l < model.weights.size(); ++l) {
    out << "weights " << join_numbers(model.weights[l].data()) << "\n";
    out << "biases " << join_numbers(model.biases[l]) << "\n";
  }
  return out.str();
}

Mlp parse_mlp(std::string_view content) {
  const auto block = parse_block(content, "mlp");
  std::vector<std::size_t> sizes;
  for (const auto& s : block.get("layers")) sizes.push_back(parse_uint(s));
  MlpHyper hyper;
  hyper.learning_rate = parse_double(single(block.get("learning_rate"), "learning_rate"));
  hyper.epochs = parse_uint(single(block.get("epochs"), "epochs"));
  hyper.batch_size = parse_uint(single(block.get("batch_size"), "batch_size"));
  hyper.l2 = parse_double(single(block.get("l2"), "l2"));
  hyper.seed = parse_uint(single(block.get("seed"), "seed"));
  Mlp model = mlp_init(sizes, hyper);
  const auto weights = block.all("weights");
  const auto biases = block.all("biases");
  if (weights.size() != model.weights.size() || biases.size() != model.biases.size()) {
    throw Error(ErrorCode::DimensionMismatch, "layer count differs from 'layers'");
  }
  std::vector<double> params;
  for (std::size_t l = 0; l < weights.size(); ++l) {
    auto w = parse_doubles(*weights[l]);
    auto b = parse_doubles(*biases[l]);
    if (w.size() != model.weights[l].rows() * model.weights[l].cols() || b.size() != model.biases[l].size()) {
      throw Error(ErrorCode::DimensionMismatch, "layer " + std::to_string(l) + " has wrong parameter count");
    }
    params.insert(params.end(), w.begin(), w.end());
    params.insert(params.end(), b.begin(), b.end());
  }
  mlp_set_parameters(model, params);
  return model;
}

}  // namespace rwov::models
