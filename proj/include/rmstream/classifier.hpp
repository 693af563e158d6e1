#pragma once

// Single-neuron classifier: linear input layer, sigmoid output.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "rmstream/core_model.hpp"

namespace rmstream {

struct ClassifierModel {
  std::vector<double> weights;  // empty until trained
  double bias = 0.0;
  double decision_threshold = 0.5;
  bool scale_input = false;  // divide each motif by its maximum before scoring
  std::uint64_t seed = 0;

  bool trained() const noexcept { return !weights.empty(); }

  friend bool operator==(const ClassifierModel&, const ClassifierModel&) = default;
};

struct Prediction {
  double probability = 0.5;
  bool positive = true;
};

Prediction predict(const ClassifierModel& model, std::span<const double> motif);
Prediction predict(const ClassifierModel& model, const RefinedMotif& rm);

struct LabeledMotif {
  std::vector<double> values;
  bool positive = false;
};

struct TrainingOptions {
  double learning_rate = 0.5;
  std::size_t epochs = 2000;
  std::uint64_t seed = 0;
  bool scale_input = false;
  double decision_threshold = 0.5;
};

/// Full-batch gradient descent on the mean logistic loss from a zero start.
/// Needs at least one sample of each class and a consistent motif length.
ClassifierModel train(std::span<const LabeledMotif> samples, const TrainingOptions& options);

/// Mean negative log-likelihood.
double logistic_loss(const ClassifierModel& model, std::span<const LabeledMotif> samples);

struct LossGradient {
  std::vector<double> weights;
  double bias = 0.0;
};

LossGradient loss_gradient(const ClassifierModel& model, std::span<const LabeledMotif> samples);

/// Fraction of samples whose predicted label matches.
double accuracy(const ClassifierModel& model, std::span<const LabeledMotif> samples);

}  // namespace rmstream
