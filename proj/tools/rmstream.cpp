// rmstream: maintain similarity profiles and refined motifs of daily
// consumption patterns, and run the inertia / compression / cost studies.

#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "rmstream/commands.hpp"
#include "rmstream/error.hpp"

using namespace rmstream;
using namespace rmstream::cli;

namespace {

struct RawProfile {
  std::string method = "additive";
  std::string strategy = "low";
  std::string slice;
  std::string weights;
  std::string cost = "absolute";
};

struct RawInput {
  std::string format = "wide";
  std::string missing = "reject";
  std::string net = "net";
  std::string user;
  std::string report;
};

void add_profile_options(CLI::App* cmd, ProfileOptions& p, RawProfile& raw) {
  cmd->add_option("--method", raw.method, "additive|fixed|codebook-cr|codebook-pd")->capture_default_str();
  cmd->add_option("--strategy", raw.strategy, "low|medium|high (fixed method)")->capture_default_str();
  cmd->add_option("--memory", p.memory, "fixed-memory window size M")->capture_default_str();
  cmd->add_option("--threshold", p.threshold, "similarity threshold: auto or a number")->capture_default_str();
  cmd->add_option("--quantile", p.quantile, "quantile used by --threshold auto")->capture_default_str();
  cmd->add_flag("--global-threshold", p.global_threshold, "pool all users' distances for --threshold auto");
  cmd->add_option("--d-rep", p.d_rep, "codeword replaceability threshold")->capture_default_str();
  cmd->add_option("--band", p.band, "DTW band radius: auto (ceil(m/8)), none or an integer")->capture_default_str();
  cmd->add_option("--slice", raw.slice, "interval range a:b kept from each day");
  cmd->add_option("--weights", raw.weights, "comma-separated per-interval DTW weights");
  cmd->add_option("--cost", raw.cost, "absolute|squared")->capture_default_str();
  cmd->add_flag("--scale-days", p.scale_days, "divide each day by its own maximum");
  cmd->add_option("--seed", p.seed, "random seed")->capture_default_str();
}

void add_input_options(CLI::App* cmd, std::string& path, DailyCsvSchema& schema, RawInput& raw,
                       bool required) {
  auto* opt = cmd->add_option("--input", path, "daily readings CSV");
  if (required) opt->required();
  cmd->add_option("--format", raw.format, "wide|long|solar-home")->capture_default_str();
  cmd->add_option("--interval", schema.interval_minutes, "minutes per reading")->capture_default_str();
  cmd->add_option("--missing", raw.missing, "reject|interpolate")->capture_default_str();
  cmd->add_option("--net", raw.net, "net|load-only (solar-home format)")->capture_default_str();
  cmd->add_option("--user", raw.user, "only this user id");
  cmd->add_option("--report", raw.report, "rejected-day report CSV (default: stderr)");
}

void finish_profile(ProfileOptions& p, const RawProfile& raw) {
  p.method = parse_method(raw.method);
  p.strategy = parse_drop_strategy(raw.strategy);
  if (!raw.slice.empty()) p.slice = parse_day_slice(raw.slice);
  if (!raw.weights.empty()) p.weights = parse_reading_row(raw.weights);
  if (raw.cost == "absolute") {
    p.cost = CostKind::Absolute;
  } else if (raw.cost == "squared") {
    p.cost = CostKind::Squared;
  } else {
    fail(ErrorKind::InvalidInput, "unknown cost '" + raw.cost + "' (absolute|squared)");
  }
}

InputOptions finish_input(const std::string& path, DailyCsvSchema schema, const RawInput& raw) {
  InputOptions in;
  in.input = path;
  schema.layout = parse_csv_layout(raw.format);
  schema.missing = parse_missing_policy(raw.missing);
  schema.net_mode = parse_net_mode(raw.net);
  in.schema = schema;
  if (!raw.user.empty()) in.user = raw.user;
  if (!raw.report.empty()) in.report = raw.report;
  return in;
}

template <typename T>
std::vector<T> parse_list(const std::string& text) {
  std::vector<T> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::istringstream is(item);
    T v{};
    if (!(is >> v)) fail(ErrorKind::InvalidInput, "bad list item '" + item + "'");
    out.push_back(v);
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Similarity-profile maintenance and refined-motif extraction for daily load patterns"};
  app.require_subcommand(1);

  // init
  InitOptions init;
  RawProfile init_raw;
  RawInput init_in_raw;
  std::string init_input, init_snapshot, init_dir;
  std::size_t init_days = 0;
  auto* init_cmd = app.add_subcommand("init", "build profiles from a CSV and save updater snapshots");
  add_input_options(init_cmd, init_input, init.in.schema, init_in_raw, true);
  add_profile_options(init_cmd, init.profile, init_raw);
  init_cmd->add_option("--days", init_days, "use only the first N days of each user");
  init_cmd->add_option("--snapshot", init_snapshot, "snapshot path (single user)");
  init_cmd->add_option("--snapshot-dir", init_dir, "directory for <user>.rmstate.json snapshots");

  // update
  UpdateOptions update;
  std::string update_snapshot, update_day, update_input;
  RawInput update_in_raw;
  DailyCsvSchema update_schema;
  auto* update_cmd = app.add_subcommand("update", "apply one updater iteration per new day");
  update_cmd->add_option("--snapshot", update_snapshot, "snapshot to update in place")->required();
  update_cmd->add_option("--day", update_day, "comma-separated raw readings of one day");
  add_input_options(update_cmd, update_input, update_schema, update_in_raw, false);

  // rm
  std::string rm_snapshot;
  auto* rm_cmd = app.add_subcommand("rm", "print the refined motif of a snapshot");
  rm_cmd->add_option("--snapshot", rm_snapshot, "updater snapshot")->required();

  // train
  TrainOptions trainopt;
  RawProfile train_raw;
  RawInput train_in_raw;
  std::string train_input, train_labels, train_model;
  DailyCsvSchema train_schema;
  auto* train_cmd = app.add_subcommand("train", "fit the single-neuron classifier on refined motifs");
  add_input_options(train_cmd, train_input, train_schema, train_in_raw, false);
  add_profile_options(train_cmd, trainopt.profile, train_raw);
  train_cmd->add_option("--labels", train_labels, "user,label CSV (1/0, solar/non-solar)");
  train_cmd->add_option("--synthetic-users", trainopt.synthetic_users, "train on a generated fleet of this size");
  train_cmd->add_option("--synthetic-days", trainopt.synthetic_days)->capture_default_str();
  train_cmd->add_option("--noise", trainopt.synthetic_noise)->capture_default_str();
  train_cmd->add_option("--intervals", trainopt.intervals)->capture_default_str();
  train_cmd->add_option("--lr", trainopt.training.learning_rate)->capture_default_str();
  train_cmd->add_option("--epochs", trainopt.training.epochs)->capture_default_str();
  train_cmd->add_flag("--scale-input", trainopt.training.scale_input, "max-scale motifs before the classifier");
  train_cmd->add_option("--model", train_model, "model output path")->required();

  // classify
  ClassifyOptions classify;
  RawProfile classify_raw;
  RawInput classify_in_raw;
  std::string classify_model, classify_snapshot, classify_input;
  DailyCsvSchema classify_schema;
  auto* classify_cmd = app.add_subcommand("classify", "label users from their refined motifs");
  classify_cmd->add_option("--model", classify_model, "trained classifier model")->required();
  classify_cmd->add_option("--snapshot", classify_snapshot, "updater snapshot to classify");
  add_input_options(classify_cmd, classify_input, classify_schema, classify_in_raw, false);
  add_profile_options(classify_cmd, classify.profile, classify_raw);

  // experiment switch | compression
  auto* exp_cmd = app.add_subcommand("experiment", "fleet experiments");
  exp_cmd->require_subcommand(1);

  SwitchOptions sw;
  std::string sw_from = "solar", sw_out, sw_hist;
  auto* sw_cmd = exp_cmd->add_subcommand("switch", "type-switch detection latency per drop strategy");
  sw_cmd->add_option("--users", sw.config.users)->capture_default_str();
  sw_cmd->add_option("--days-before", sw.config.days_before)->capture_default_str();
  sw_cmd->add_option("--days-after", sw.config.days_after)->capture_default_str();
  sw_cmd->add_option("--memory", sw.config.memory)->capture_default_str();
  sw_cmd->add_option("--noise", sw.config.noise)->capture_default_str();
  sw_cmd->add_option("--seed", sw.config.seed)->capture_default_str();
  sw_cmd->add_option("--intervals", sw.config.intervals)->capture_default_str();
  sw_cmd->add_option("--from", sw_from, "starting archetype: solar|non-solar")->capture_default_str();
  sw_cmd->add_flag("--switchless", sw.config.switchless, "fleet without any switch (control run)");
  sw_cmd->add_option("--quantile", sw.config.threshold_quantile)->capture_default_str();
  sw_cmd->add_option("--band", sw.band)->capture_default_str();
  sw_cmd->add_option("--training-users", sw.config.training_users)->capture_default_str();
  sw_cmd->add_option("--lr", sw.config.training.learning_rate)->capture_default_str();
  sw_cmd->add_option("--epochs", sw.config.training.epochs)->capture_default_str();
  sw_cmd->add_option("--out", sw_out, "report CSV (default: stdout)");
  sw_cmd->add_option("--histogram", sw_hist, "latency histogram CSV");

  CompressionOptions cp;
  RawProfile cp_raw;
  RawInput cp_in_raw;
  std::string cp_input, cp_labels, cp_out, cp_lengths = "30,60,90", cp_dreps = "0,0.5,1,2",
                                               cp_variant = "codebook-pd";
  DailyCsvSchema cp_schema;
  auto* cp_cmd = exp_cmd->add_subcommand("compression", "memory saving over a d_rep sweep");
  add_input_options(cp_cmd, cp_input, cp_schema, cp_in_raw, false);
  add_profile_options(cp_cmd, cp.profile, cp_raw);
  cp_cmd->add_option("--labels", cp_labels, "user,label CSV for the accuracy column");
  cp_cmd->add_option("--users", cp.fleet.users)->capture_default_str();
  cp_cmd->add_option("--noise", cp.fleet.noise)->capture_default_str();
  cp_cmd->add_option("--intervals", cp.fleet.intervals)->capture_default_str();
  cp_cmd->add_option("--lengths", cp_lengths, "stream lengths (days)")->capture_default_str();
  cp_cmd->add_option("--d-rep-list", cp_dreps, "d_rep sweep")->capture_default_str();
  cp_cmd->add_option("--variant", cp_variant, "codebook-cr|codebook-pd")->capture_default_str();
  cp_cmd->add_option("--out", cp_out, "report CSV (default: stdout)");

  // bench
  BenchOptions bench;
  std::string bench_sizes = "100,1000", bench_methods = "additive,fixed,codebook-cr,codebook-pd", bench_out;
  auto* bench_cmd = app.add_subcommand("bench", "per-update wall time and stored units vs history length");
  bench_cmd->add_option("--sizes", bench_sizes)->capture_default_str();
  bench_cmd->add_option("--methods", bench_methods)->capture_default_str();
  bench_cmd->add_option("--intervals", bench.config.intervals)->capture_default_str();
  bench_cmd->add_option("--memory", bench.config.memory)->capture_default_str();
  bench_cmd->add_option("--d-rep", bench.config.d_rep)->capture_default_str();
  bench_cmd->add_option("--threshold", bench.config.threshold)->capture_default_str();
  bench_cmd->add_option("--noise", bench.config.noise)->capture_default_str();
  bench_cmd->add_option("--repeats", bench.config.repeats)->capture_default_str();
  bench_cmd->add_option("--seed", bench.config.seed)->capture_default_str();
  bench_cmd->add_option("--band", bench.band)->capture_default_str();
  bench_cmd->add_option("--out", bench_out, "report CSV (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitInvalidInput;
  }

  return guarded(std::cerr, [&]() -> int {
    if (*init_cmd) {
      finish_profile(init.profile, init_raw);
      init.in = finish_input(init_input, init.in.schema, init_in_raw);
      if (init_days > 0) init.days = init_days;
      if (!init_snapshot.empty()) init.snapshot = init_snapshot;
      if (!init_dir.empty()) init.snapshot_dir = init_dir;
      return cmd_init(init, std::cout, std::cerr);
    }
    if (*update_cmd) {
      update.snapshot = update_snapshot;
      if (!update_day.empty()) update.day = update_day;
      if (!update_input.empty()) update.in = finish_input(update_input, update_schema, update_in_raw);
      return cmd_update(update, std::cout, std::cerr);
    }
    if (*rm_cmd) return cmd_rm(rm_snapshot, std::cout, std::cerr);
    if (*train_cmd) {
      finish_profile(trainopt.profile, train_raw);
      if (!train_input.empty()) trainopt.in = finish_input(train_input, train_schema, train_in_raw);
      if (!train_labels.empty()) trainopt.labels = train_labels;
      trainopt.model = train_model;
      return cmd_train(trainopt, std::cout, std::cerr);
    }
    if (*classify_cmd) {
      finish_profile(classify.profile, classify_raw);
      classify.model = classify_model;
      if (!classify_snapshot.empty()) classify.snapshot = classify_snapshot;
      if (!classify_input.empty()) classify.in = finish_input(classify_input, classify_schema, classify_in_raw);
      return cmd_classify(classify, std::cout, std::cerr);
    }
    if (*sw_cmd) {
      if (sw_from == "solar") {
        sw.config.from = Archetype::Solar;
      } else if (sw_from == "non-solar") {
        sw.config.from = Archetype::NonSolar;
      } else {
        fail(ErrorKind::InvalidInput, "unknown archetype '" + sw_from + "'");
      }
      if (!sw_out.empty()) sw.out = sw_out;
      if (!sw_hist.empty()) sw.histogram = sw_hist;
      return cmd_experiment_switch(sw, std::cout, std::cerr);
    }
    if (*cp_cmd) {
      finish_profile(cp.profile, cp_raw);
      if (!cp_input.empty()) cp.in = finish_input(cp_input, cp_schema, cp_in_raw);
      if (!cp_labels.empty()) cp.labels = cp_labels;
      cp.fleet.seed = cp.profile.seed;
      cp.config.lengths = parse_list<std::size_t>(cp_lengths);
      cp.config.d_reps = parse_list<double>(cp_dreps);
      cp.config.threshold_quantile = cp.profile.quantile;
      const auto variant = parse_method(cp_variant);
      if (variant != Method::CodebookCR && variant != Method::CodebookPD) {
        fail(ErrorKind::InvalidInput, "--variant must be codebook-cr or codebook-pd");
      }
      cp.config.variant = variant == Method::CodebookCR ? CodebookVariant::WithCR
                                                        : CodebookVariant::PatternsDictionary;
      if (!cp_out.empty()) cp.out = cp_out;
      return cmd_experiment_compression(cp, std::cout, std::cerr);
    }
    if (*bench_cmd) {
      bench.config.sizes = parse_list<std::size_t>(bench_sizes);
      bench.config.methods.clear();
      std::stringstream ss(bench_methods);
      std::string m;
      while (std::getline(ss, m, ',')) bench.config.methods.push_back(parse_method(m));
      if (!bench_out.empty()) bench.out = bench_out;
      return cmd_bench(bench, std::cout, std::cerr);
    }
    return kExitInvalidInput;
  });
}
