#include "rmstream/classifier.hpp"

#include <algorithm>
#include <cmath>

#include "rmstream/error.hpp"

namespace rmstream {
namespace {

double sigmoid(double z) {
  if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

// log(1 + exp(z)) without overflow.
double softplus(double z) {
  return z > 0.0 ? z + std::log1p(std::exp(-z)) : std::log1p(std::exp(z));
}

std::vector<double> scaled(std::span<const double> x, bool scale) {
  std::vector<double> out(x.begin(), x.end());
  if (scale && !out.empty()) {
    const double peak = *std::max_element(out.begin(), out.end());
    if (peak > 0.0) {
      for (double& v : out) v /= peak;
    }
  }
  return out;
}

double logit(const ClassifierModel& model, std::span<const double> x) {
  if (x.size() != model.weights.size()) {
    fail(ErrorKind::InvalidInput, "motif length " + std::to_string(x.size()) +
                                      " does not match classifier width " +
                                      std::to_string(model.weights.size()));
  }
  double z = model.bias;
  for (std::size_t k = 0; k < x.size(); ++k) z += model.weights[k] * x[k];
  return z;
}

void check_samples(std::span<const LabeledMotif> samples, std::size_t width) {
  for (const auto& s : samples) {
    if (s.values.size() != width) fail(ErrorKind::InvalidInput, "inconsistent motif lengths");
  }
}

}  // namespace

Prediction predict(const ClassifierModel& model, std::span<const double> motif) {
  if (!model.trained()) fail(ErrorKind::InvalidState, "classifier has not been trained");
  const auto x = scaled(motif, model.scale_input);
  const double p = sigmoid(logit(model, x));
  return {p, p >= model.decision_threshold};
}

Prediction predict(const ClassifierModel& model, const RefinedMotif& rm) {
  return predict(model, std::span<const double>(rm.pattern.values));
}

double logistic_loss(const ClassifierModel& model, std::span<const LabeledMotif> samples) {
  if (samples.empty()) fail(ErrorKind::InvalidInput, "loss over no samples");
  double total = 0.0;
  for (const auto& s : samples) {
    const double z = logit(model, scaled(s.values, model.scale_input));
    // -log sigmoid(z) = softplus(-z); -log(1 - sigmoid(z)) = softplus(z)
    total += s.positive ? softplus(-z) : softplus(z);
  }
  return total / static_cast<double>(samples.size());
}

LossGradient loss_gradient(const ClassifierModel& model, std::span<const LabeledMotif> samples) {
  if (samples.empty()) fail(ErrorKind::InvalidInput, "gradient over no samples");
  LossGradient g{std::vector<double>(model.weights.size(), 0.0), 0.0};
  for (const auto& s : samples) {
    const auto x = scaled(s.values, model.scale_input);
    const double residual = sigmoid(logit(model, x)) - (s.positive ? 1.0 : 0.0);
    for (std::size_t k = 0; k < x.size(); ++k) g.weights[k] += residual * x[k];
    g.bias += residual;
  }
  const double inv = 1.0 / static_cast<double>(samples.size());
  for (double& w : g.weights) w *= inv;
  g.bias *= inv;
  return g;
}

ClassifierModel train(std::span<const LabeledMotif> samples, const TrainingOptions& options) {
  if (samples.empty()) fail(ErrorKind::InvalidInput, "no training samples");
  const std::size_t width = samples.front().values.size();
  if (width == 0) fail(ErrorKind::InvalidInput, "empty training motif");
  check_samples(samples, width);
  const bool has_pos = std::any_of(samples.begin(), samples.end(), [](auto& s) { return s.positive; });
  const bool has_neg = std::any_of(samples.begin(), samples.end(), [](auto& s) { return !s.positive; });
  if (!has_pos || !has_neg) fail(ErrorKind::InvalidInput, "training needs samples of both classes");
  if (!(options.learning_rate > 0.0) || !std::isfinite(options.learning_rate)) {
    fail(ErrorKind::InvalidInput, "learning rate must be positive");
  }
  if (!(options.decision_threshold > 0.0 && options.decision_threshold < 1.0)) {
    fail(ErrorKind::InvalidInput, "decision threshold must lie in (0, 1)");
  }

  ClassifierModel model;
  model.weights.assign(width, 0.0);
  model.decision_threshold = options.decision_threshold;
  model.scale_input = options.scale_input;
  model.seed = options.seed;

  for (std::size_t epoch = 0; epoch < options.epochs; ++epoch) {
    const auto g = loss_gradient(model, samples);
    for (std::size_t k = 0; k < width; ++k) model.weights[k] -= options.learning_rate * g.weights[k];
    model.bias -= options.learning_rate * g.bias;
  }
  return model;
}

double accuracy(const ClassifierModel& model, std::span<const LabeledMotif> samples) {
  if (samples.empty()) return 0.0;
  std::size_t hits = 0;
  for (const auto& s : samples) {
    if (predict(model, std::span<const double>(s.values)).positive == s.positive) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(samples.size());
}

}  // namespace rmstream
