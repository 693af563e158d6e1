#pragma once

// Fleet-level experiment drivers behind `rmstream experiment ...` and
// `rmstream bench`. Every driver is deterministic in its config.

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "rmstream/classifier.hpp"
#include "rmstream/synthetic.hpp"
#include "rmstream/updater.hpp"

namespace rmstream {

struct FleetUser {
  std::string id;
  Archetype archetype = Archetype::Solar;  // archetype of the first day
  std::optional<std::size_t> switch_day;
  std::vector<DayPattern> days;
};

struct FleetSpec {
  std::size_t users = 20;
  std::size_t days = 40;
  double noise = 0.05;
  std::uint64_t seed = 1;
  std::size_t intervals = 48;
  /// When set every user starts as this archetype; otherwise users alternate
  /// solar / non-solar starting with solar.
  std::optional<Archetype> archetype;
  std::optional<std::size_t> switch_day;
};

std::vector<FleetUser> generate_fleet(const FleetSpec& spec);

/// Per-user seed derived from the fleet seed.
std::uint64_t user_seed(std::uint64_t fleet_seed, std::size_t user) noexcept;

struct MotifSettings {
  Method method = Method::Additive;
  ProfileParams params;
  DistanceConfig config;
  /// Per-user threshold from this quantile of the user's pairwise distances;
  /// params.threshold is used as-is when unset.
  std::optional<double> threshold_quantile = 0.3;
};

double user_threshold(std::span<const DayPattern> days, const MotifSettings& settings);

UpdaterState build_user_state(std::span<const DayPattern> days, const MotifSettings& settings);

/// Labels: positive = solar archetype (at the end of the stream).
std::vector<LabeledMotif> fleet_motifs(const std::vector<FleetUser>& fleet,
                                       const MotifSettings& settings);

// ---------------------------------------------------------------------------
// Type-switch detection (inertia study)

struct SwitchExperimentConfig {
  std::size_t users = 20;
  std::size_t days_before = 20;
  std::size_t days_after = 20;
  std::size_t memory = 5;
  double noise = 0.05;
  std::uint64_t seed = 1;
  std::size_t intervals = 48;
  Archetype from = Archetype::Solar;
  bool switchless = false;
  double threshold_quantile = 0.3;
  DistanceConfig config;
  TrainingOptions training;
  std::size_t training_users = 20;  // separate fleet used to fit the classifier
};

struct SwitchRow {
  std::string user;
  DropStrategy strategy = DropStrategy::LowInertia;
  std::optional<std::size_t> latency;
};

struct SwitchSummary {
  DropStrategy strategy = DropStrategy::LowInertia;
  std::optional<std::size_t> median_latency;  // lower median, undetected ranks last
  std::size_t undetected = 0;
  std::size_t users = 0;
};

struct SwitchReport {
  std::vector<SwitchRow> rows;  // ordered by (user, strategy)
  std::vector<SwitchSummary> summary;
  double classifier_training_accuracy = 0.0;
};

/// Runs the inertia study on an explicit fleet with an already trained model.
SwitchReport run_switch_study(const std::vector<FleetUser>& fleet, const ClassifierModel& model,
                              std::size_t memory, double threshold_quantile,
                              const DistanceConfig& cfg);

/// Generates the fleet and a training fleet, fits the classifier, runs the study.
SwitchReport run_switch_experiment(const SwitchExperimentConfig& config);

/// Lower median with nullopt treated as +infinity.
std::optional<std::size_t> lower_median(std::vector<std::optional<std::size_t>> values);

void write_switch_report(std::ostream& out, const SwitchReport& report, const std::string& provenance);
/// strategy,latency,users with one row per observed latency plus an
/// `undetected` row per strategy.
void write_latency_histogram(std::ostream& out, const SwitchReport& report,
                             const std::string& provenance);

// ---------------------------------------------------------------------------
// Compression sweep

struct CompressionConfig {
  std::vector<std::size_t> lengths{30, 60, 90};
  std::vector<double> d_reps{0.0, 0.5, 1.0, 2.0};
  CodebookVariant variant = CodebookVariant::PatternsDictionary;
  double threshold_quantile = 0.3;
  DistanceConfig config;
  std::optional<TrainingOptions> training;  // accuracy column when set
};

struct CompressionRow {
  std::string user;
  std::size_t length = 0;
  double d_rep = 0.0;
  std::size_t codewords = 0;
  std::size_t days = 0;
  std::size_t stored_units = 0;
  double saving = 0.0;
};

struct CompressionSummary {
  std::size_t length = 0;
  double d_rep = 0.0;
  double mean_saving = 0.0;
  std::optional<double> accuracy;
};

struct CompressionReport {
  std::vector<CompressionRow> rows;  // ordered by (user, length, d_rep)
  std::vector<CompressionSummary> summary;
};

/// Lengths longer than a user's stream are clipped to the stream length.
CompressionReport run_compression_experiment(const std::vector<FleetUser>& fleet,
                                             const CompressionConfig& config);

void write_compression_report(std::ostream& out, const CompressionReport& report,
                              const std::string& provenance);

// ---------------------------------------------------------------------------
// Per-update cost

struct ComplexityConfig {
  std::vector<std::size_t> sizes{100, 1000};
  std::vector<Method> methods{Method::Additive, Method::Fixed, Method::CodebookCR,
                              Method::CodebookPD};
  std::size_t intervals = 48;
  std::size_t memory = 15;
  double d_rep = 0.5;
  double threshold = 1.0;
  double noise = 0.1;
  std::size_t repeats = 41;
  std::uint64_t seed = 1;
  DistanceConfig config;
};

struct ComplexityRow {
  Method method = Method::Additive;
  std::size_t history = 0;
  double seconds_per_update = 0.0;  // median over repeats
  std::size_t stored_units = 0;
  std::size_t expected_units = 0;   // closed-form accounting for the method
  std::optional<double> saving;     // codebook methods only
};

/// Closed-form stored units for a state with `days` seen, `codewords` codewords.
std::size_t expected_stored_units(Method method, std::size_t days, std::size_t m,
                                  std::size_t memory, std::size_t codewords);

std::vector<ComplexityRow> run_complexity_benchmark(const ComplexityConfig& config);

void write_complexity_report(std::ostream& out, const std::vector<ComplexityRow>& rows,
                             const std::string& provenance);

}  // namespace rmstream
