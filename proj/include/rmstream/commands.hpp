#pragma once

// Subcommand implementations for the `rmstream` tool. Each returns a process
// exit code: 0 success, 2 invalid input, 3 corrupt or unsupported snapshot.

#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "rmstream/csv_ingest.hpp"
#include "rmstream/error.hpp"
#include "rmstream/experiments.hpp"

namespace rmstream::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInvalidInput = 2;
inline constexpr int kExitCorruptSnapshot = 3;

int exit_code_for(ErrorKind kind) noexcept;

/// Runs `body`, mapping library errors to exit codes and messages on `err`.
int guarded(std::ostream& err, const std::function<int()>& body);

/// Options shared by every command that builds or reads profiles.
struct ProfileOptions {
  Method method = Method::Additive;
  DropStrategy strategy = DropStrategy::LowInertia;
  std::size_t memory = 15;
  std::string threshold = "auto";  // "auto" or a number
  double quantile = 0.3;
  bool global_threshold = false;   // pool every user's distances for "auto"
  double d_rep = 0.5;
  std::string band = "auto";       // "auto" (ceil(m/8)), "none" or an integer
  std::optional<DaySlice> slice;
  std::optional<std::vector<double>> weights;
  CostKind cost = CostKind::Absolute;
  bool scale_days = false;
  std::uint64_t seed = 0;
};

struct InputOptions {
  std::filesystem::path input;
  DailyCsvSchema schema;
  std::optional<std::string> user;
  std::optional<std::filesystem::path> report;  // rejected-day report; stderr when unset
};

/// Distance config before the pattern length is known (slice, weights, cost, scaling).
DistanceConfig ingest_config(const ProfileOptions& opts);
/// Completes the band once the pattern length is known and validates.
DistanceConfig finalize_config(DistanceConfig cfg, const ProfileOptions& opts, std::size_t m);

struct InitOptions {
  InputOptions in;
  ProfileOptions profile;
  std::optional<std::size_t> days;  // only the first N days of each user
  std::optional<std::filesystem::path> snapshot;
  std::optional<std::filesystem::path> snapshot_dir;  // <dir>/<user>.rmstate.json
};
int cmd_init(const InitOptions& opts, std::ostream& out, std::ostream& err);

struct UpdateOptions {
  std::filesystem::path snapshot;
  std::optional<std::string> day;  // one row of raw readings
  std::optional<InputOptions> in;  // or every day of one user from a file
};
int cmd_update(const UpdateOptions& opts, std::ostream& out, std::ostream& err);

int cmd_rm(const std::filesystem::path& snapshot, std::ostream& out, std::ostream& err);

struct TrainOptions {
  std::optional<InputOptions> in;
  std::optional<std::filesystem::path> labels;  // user,label
  std::size_t synthetic_users = 0;              // used when no input is given
  std::size_t synthetic_days = 30;
  double synthetic_noise = 0.05;
  std::size_t intervals = 48;
  ProfileOptions profile;
  TrainingOptions training;
  std::filesystem::path model;
};
int cmd_train(const TrainOptions& opts, std::ostream& out, std::ostream& err);

struct ClassifyOptions {
  std::filesystem::path model;
  std::optional<std::filesystem::path> snapshot;
  std::optional<InputOptions> in;
  ProfileOptions profile;
};
int cmd_classify(const ClassifyOptions& opts, std::ostream& out, std::ostream& err);

struct SwitchOptions {
  SwitchExperimentConfig config;
  std::string band = "auto";
  std::optional<std::filesystem::path> out;
  std::optional<std::filesystem::path> histogram;
};
int cmd_experiment_switch(const SwitchOptions& opts, std::ostream& out, std::ostream& err);

struct CompressionOptions {
  std::optional<InputOptions> in;
  std::optional<std::filesystem::path> labels;
  FleetSpec fleet;
  CompressionConfig config;
  ProfileOptions profile;
  bool with_accuracy = true;
  TrainingOptions training;
  std::optional<std::filesystem::path> out;
};
int cmd_experiment_compression(const CompressionOptions& opts, std::ostream& out,
                               std::ostream& err);

struct BenchOptions {
  ComplexityConfig config;
  std::string band = "auto";
  std::optional<std::filesystem::path> out;
};
int cmd_bench(const BenchOptions& opts, std::ostream& out, std::ostream& err);

/// user,label file; labels 1/0, solar/non-solar, positive/negative.
std::vector<std::pair<std::string, bool>> load_labels(const std::filesystem::path& path);

}  // namespace rmstream::cli
