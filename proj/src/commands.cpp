#include "rmstream/commands.hpp"

#include <charconv>
#include <fstream>
#include <iostream>
#include <sstream>

#include "rmstream/batch_profile.hpp"
#include "rmstream/error.hpp"
#include "rmstream/snapshot.hpp"

namespace rmstream::cli {
namespace {

double parse_real(const std::string& text, const char* what) {
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    fail(ErrorKind::InvalidInput, std::string("bad ") + what + " '" + text + "'");
  }
  return v;
}

std::optional<std::size_t> resolve_band(const std::string& band, std::size_t m) {
  if (band == "auto") return default_band_radius(m);
  if (band == "none") return std::nullopt;
  std::size_t v = 0;
  auto [ptr, ec] = std::from_chars(band.data(), band.data() + band.size(), v);
  if (ec != std::errc() || ptr != band.data() + band.size()) {
    fail(ErrorKind::InvalidInput, "bad band '" + band + "' (auto|none|<int>)");
  }
  return v;
}

IngestResult ingest(const InputOptions& in, const DistanceConfig& cfg, std::ostream& err) {
  auto result = load_daily_csv(in.input, in.schema, cfg);
  if (!result.rejected.empty()) {
    if (in.report) {
      std::ofstream rep(*in.report);
      if (!rep) fail(ErrorKind::Io, "cannot write " + in.report->string());
      write_rejection_report(rep, result.rejected);
    } else {
      write_rejection_report(err, result.rejected);
    }
  }
  if (in.user) {
    std::erase_if(result.users, [&](const UserSeries& s) { return s.user != *in.user; });
    if (result.users.empty()) fail(ErrorKind::InvalidInput, "user '" + *in.user + "' not found");
  }
  if (result.users.empty()) fail(ErrorKind::InvalidInput, "no complete days in " + in.input.string());
  return result;
}

// Pooled off-diagonal distances of every user, for a fleet-wide threshold.
double pooled_threshold(const std::vector<UserSeries>& users, const DistanceConfig& cfg,
                        double quantile) {
  std::vector<double> all;
  for (const auto& u : users) {
    if (u.days.size() < 2) continue;
    const auto d = pairwise_distance_matrix(u.days, cfg);
    for (std::size_t i = 0; i < d.size(); ++i) {
      for (std::size_t j = 0; j < d.size(); ++j) {
        if (i != j && (!cfg.symmetric() || j > i)) all.push_back(d(i, j));
      }
    }
  }
  return nearest_rank_quantile(std::move(all), quantile);
}

std::size_t next_day_index(const UpdaterState& state) {
  if (const auto* a = std::get_if<AdditiveState>(&state)) return a->tsd().back().day_index + 1;
  if (const auto* f = std::get_if<FixedMemoryState>(&state)) return f->window().back().day_index + 1;
  return std::get<CodebookState>(state).day_count();
}

void print_motif(std::ostream& out, const RefinedMotif& rm) {
  out << "source_index,day_index,sp_value";
  for (std::size_t k = 0; k < rm.pattern.values.size(); ++k) out << ",v" << k;
  out << '\n' << rm.source_index << ',' << rm.pattern.day_index << ',' << rm.sp_value;
  for (double v : rm.pattern.values) out << ',' << v;
  out << '\n';
}

std::ostream& open_or(std::optional<std::ofstream>& file,
                      const std::optional<std::filesystem::path>& path, std::ostream& fallback) {
  if (!path) return fallback;
  file.emplace(*path);
  if (!*file) fail(ErrorKind::Io, "cannot write " + path->string());
  return *file;
}

MotifSettings motif_settings(const ProfileOptions& p, const DistanceConfig& cfg) {
  MotifSettings s;
  s.method = p.method;
  s.params = ProfileParams{0.0, p.d_rep, p.memory, p.strategy};
  s.config = cfg;
  if (p.threshold == "auto") {
    s.threshold_quantile = p.quantile;
  } else {
    s.threshold_quantile = std::nullopt;
    s.params.threshold = parse_real(p.threshold, "threshold");
  }
  return s;
}

std::vector<FleetUser> fleet_from_input(const IngestResult& data,
                                        const std::vector<std::pair<std::string, bool>>& labels,
                                        bool require_labels) {
  std::vector<FleetUser> fleet;
  for (const auto& u : data.users) {
    FleetUser f;
    f.id = u.user;
    f.days = u.days;
    auto it = std::find_if(labels.begin(), labels.end(), [&](auto& l) { return l.first == u.user; });
    if (it == labels.end()) {
      if (require_labels) fail(ErrorKind::InvalidInput, "no label for user '" + u.user + "'");
    } else {
      f.archetype = it->second ? Archetype::Solar : Archetype::NonSolar;
    }
    fleet.push_back(std::move(f));
  }
  return fleet;
}

}  // namespace

int exit_code_for(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::CorruptState:
    case ErrorKind::UnsupportedVersion:
      return kExitCorruptSnapshot;
    default:
      return kExitInvalidInput;
  }
}

int guarded(std::ostream& err, const std::function<int()>& body) {
  try {
    return body();
  } catch (const Error& e) {
    err << "error (" << to_string(e.kind()) << "): " << e.what() << '\n';
    return exit_code_for(e.kind());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitInvalidInput;
  }
}

DistanceConfig ingest_config(const ProfileOptions& opts) {
  DistanceConfig cfg;
  cfg.day_slice = opts.slice;
  cfg.weights = opts.weights;
  cfg.cost = opts.cost;
  cfg.scale_days = opts.scale_days;
  return cfg;
}

DistanceConfig finalize_config(DistanceConfig cfg, const ProfileOptions& opts, std::size_t m) {
  cfg.band_radius = resolve_band(opts.band, m);
  if (cfg.band_radius && *cfg.band_radius > m - 1) cfg.band_radius = m - 1;
  cfg.validate(m);
  return cfg;
}

std::vector<std::pair<std::string, bool>> load_labels(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::Io, "cannot open " + path.string());
  std::vector<std::pair<std::string, bool>> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line_no == 1) continue;  // header
    const auto comma = line.find(',');
    if (comma == std::string::npos) {
      fail(ErrorKind::InvalidInput, "line " + std::to_string(line_no) + ": expected user,label");
    }
    const std::string user = line.substr(0, comma);
    const std::string label = line.substr(comma + 1);
    bool positive;
    if (label == "1" || label == "solar" || label == "positive") {
      positive = true;
    } else if (label == "0" || label == "non-solar" || label == "negative") {
      positive = false;
    } else {
      fail(ErrorKind::InvalidInput, "line " + std::to_string(line_no) + ": bad label '" + label + "'");
    }
    out.emplace_back(user, positive);
  }
  return out;
}

int cmd_init(const InitOptions& opts, std::ostream& out, std::ostream& err) {
  const auto base = ingest_config(opts.profile);
  auto data = ingest(opts.in, base, err);
  if (opts.days) {
    for (auto& u : data.users) {
      if (u.days.size() > *opts.days) {
        u.days.resize(*opts.days);
        u.dates.resize(*opts.days);
      }
    }
  }
  for (const auto& u : data.users) {
    if (u.days.size() < 2) {
      fail(ErrorKind::InvalidInput, "user '" + u.user + "' has " + std::to_string(u.days.size()) +
                                        " day(s); initialisation needs at least 2");
    }
  }
  if (data.users.size() > 1 && !opts.snapshot_dir) {
    fail(ErrorKind::InvalidInput, "input holds several users: pass --user or --snapshot-dir");
  }
  if (!opts.snapshot && !opts.snapshot_dir) fail(ErrorKind::InvalidInput, "no --snapshot given");

  const std::size_t m = data.users.front().days.front().length();
  const auto cfg = finalize_config(base, opts.profile, m);
  std::optional<double> global;
  if (opts.profile.threshold == "auto" && opts.profile.global_threshold) {
    global = pooled_threshold(data.users, cfg, opts.profile.quantile);
  }

  out << "user,days,threshold,rm_index,rm_sp_value,snapshot\n";
  for (const auto& u : data.users) {
    ProfileParams params{0.0, opts.profile.d_rep, opts.profile.memory, opts.profile.strategy};
    if (opts.profile.threshold == "auto") {
      params.threshold = global ? *global : default_threshold(u.days, cfg, opts.profile.quantile);
    } else {
      params.threshold = parse_real(opts.profile.threshold, "threshold");
    }
    for (const auto& w : params.validate()) err << "warning: " << w << '\n';
    const auto state = init_state(u.days, opts.profile.method, params, cfg);
    const auto path = opts.snapshot_dir && !(opts.snapshot && data.users.size() == 1)
                          ? *opts.snapshot_dir / (u.user + ".rmstate.json")
                          : *opts.snapshot;
    snapshot_save(to_snapshot(state), path);
    const auto rm = refined_motif(state);
    out << u.user << ',' << u.days.size() << ',' << params.threshold << ',' << rm.source_index << ','
        << rm.sp_value << ',' << path.string() << '\n';
  }
  return kExitOk;
}

int cmd_update(const UpdateOptions& opts, std::ostream& out, std::ostream& err) {
  auto state = to_updater(snapshot_load(opts.snapshot));
  const auto& cfg = config_of(state);
  std::vector<std::vector<double>> raw_days;
  if (opts.day) {
    raw_days.push_back(parse_reading_row(*opts.day));
  } else if (opts.in) {
    // Readings in the file are raw; the snapshot's slice is applied below.
    DistanceConfig raw_cfg;
    auto data = ingest(*opts.in, raw_cfg, err);
    if (data.users.size() != 1) fail(ErrorKind::InvalidInput, "update input must hold one user (use --user)");
    for (const auto& d : data.users.front().days) raw_days.push_back(d.values);
  } else {
    fail(ErrorKind::InvalidInput, "nothing to update with: pass --day or --input");
  }
  for (const auto& raw : raw_days) {
    update_state(state, prepare_day(next_day_index(state), raw, cfg));
  }
  snapshot_save(to_snapshot(state), opts.snapshot);
  print_motif(out, refined_motif(state));
  return kExitOk;
}

int cmd_rm(const std::filesystem::path& snapshot, std::ostream& out, std::ostream&) {
  const auto state = to_updater(snapshot_load(snapshot));
  print_motif(out, refined_motif(state));
  return kExitOk;
}

int cmd_train(const TrainOptions& opts, std::ostream& out, std::ostream& err) {
  std::vector<FleetUser> fleet;
  DistanceConfig cfg;
  if (opts.in) {
    if (!opts.labels) fail(ErrorKind::InvalidInput, "training from a file needs --labels");
    const auto base = ingest_config(opts.profile);
    const auto data = ingest(*opts.in, base, err);
    fleet = fleet_from_input(data, load_labels(*opts.labels), true);
    cfg = finalize_config(base, opts.profile, fleet.front().days.front().length());
  } else {
    if (opts.synthetic_users < 2) fail(ErrorKind::InvalidInput, "need --input or --synthetic-users >= 2");
    fleet = generate_fleet(FleetSpec{opts.synthetic_users, opts.synthetic_days, opts.synthetic_noise,
                                     opts.profile.seed, opts.intervals, std::nullopt, std::nullopt});
    cfg = finalize_config(DistanceConfig{}, opts.profile, opts.intervals);
  }
  const auto samples = fleet_motifs(fleet, motif_settings(opts.profile, cfg));
  auto training = opts.training;
  training.seed = opts.profile.seed;
  const auto model = train(samples, training);
  snapshot_save(model, opts.model);
  out << "samples,training_accuracy,training_loss,model\n"
      << samples.size() << ',' << accuracy(model, samples) << ',' << logistic_loss(model, samples) << ','
      << opts.model.string() << '\n';
  return kExitOk;
}

int cmd_classify(const ClassifyOptions& opts, std::ostream& out, std::ostream& err) {
  auto loaded = snapshot_load(opts.model);
  const auto* model = std::get_if<ClassifierModel>(&loaded);
  if (!model) fail(ErrorKind::InvalidInput, opts.model.string() + " is not a classifier model");
  if (!model->trained()) fail(ErrorKind::InvalidState, "classifier model has not been trained");

  out << "user,probability,label\n";
  auto emit = [&](const std::string& user, const RefinedMotif& rm) {
    const auto p = predict(*model, rm);
    out << user << ',' << p.probability << ',' << (p.positive ? "positive" : "negative") << '\n';
  };
  if (opts.snapshot) {
    const auto state = to_updater(snapshot_load(*opts.snapshot));
    auto name = opts.snapshot->filename().string();
    if (auto dot = name.find('.'); dot != std::string::npos) name.resize(dot);
    emit(name, refined_motif(state));
  } else if (opts.in) {
    const auto base = ingest_config(opts.profile);
    const auto data = ingest(*opts.in, base, err);
    const auto cfg = finalize_config(base, opts.profile, data.users.front().days.front().length());
    const auto settings = motif_settings(opts.profile, cfg);
    for (const auto& u : data.users) emit(u.user, refined_motif(build_user_state(u.days, settings)));
  } else {
    fail(ErrorKind::InvalidInput, "classify needs --snapshot or --input");
  }
  return kExitOk;
}

int cmd_experiment_switch(const SwitchOptions& opts, std::ostream& out, std::ostream&) {
  auto config = opts.config;
  config.config.band_radius = resolve_band(opts.band, config.intervals);
  config.config.validate(config.intervals);
  const auto report = run_switch_experiment(config);

  std::ostringstream prov;
  prov << "command=experiment switch\nusers=" << config.users << "\ndays_before=" << config.days_before
       << "\ndays_after=" << config.days_after << "\nmemory=" << config.memory
       << "\nnoise=" << config.noise << "\nseed=" << config.seed << "\nintervals=" << config.intervals
       << "\nfrom=" << to_string(config.from) << "\nswitchless=" << config.switchless
       << "\nquantile=" << config.threshold_quantile << "\nband=" << opts.band
       << "\nlearning_rate=" << config.training.learning_rate << "\nepochs=" << config.training.epochs
       << "\nmedian=lower median, undetected ranked last";
  std::optional<std::ofstream> file;
  write_switch_report(open_or(file, opts.out, out), report, prov.str());
  if (opts.histogram) {
    std::ofstream hist(*opts.histogram);
    if (!hist) fail(ErrorKind::Io, "cannot write " + opts.histogram->string());
    write_latency_histogram(hist, report, prov.str());
  }
  return kExitOk;
}

int cmd_experiment_compression(const CompressionOptions& opts, std::ostream& out, std::ostream& err) {
  std::vector<FleetUser> fleet;
  auto config = opts.config;
  const auto base = ingest_config(opts.profile);
  std::size_t m = opts.fleet.intervals;
  if (opts.in) {
    const auto data = ingest(*opts.in, base, err);
    const auto labels = opts.labels ? load_labels(*opts.labels)
                                    : std::vector<std::pair<std::string, bool>>{};
    fleet = fleet_from_input(data, labels, opts.labels.has_value());
    m = fleet.front().days.front().length();
    if (!opts.labels) config.training.reset();
  } else {
    auto spec = opts.fleet;
    if (!config.lengths.empty()) spec.days = *std::max_element(config.lengths.begin(), config.lengths.end());
    fleet = generate_fleet(spec);
  }
  config.config = finalize_config(base, opts.profile, m);
  if (opts.with_accuracy && (!opts.in || opts.labels)) config.training = opts.training;
  const auto report = run_compression_experiment(fleet, config);

  std::ostringstream prov;
  prov << "command=experiment compression\nsource=" << (opts.in ? opts.in->input.string() : "synthetic")
       << "\nusers=" << fleet.size() << "\nvariant=" << to_string(config.variant)
       << "\nquantile=" << config.threshold_quantile << "\nband=" << opts.profile.band
       << "\nnoise=" << opts.fleet.noise << "\nseed=" << opts.fleet.seed;
  std::optional<std::ofstream> file;
  write_compression_report(open_or(file, opts.out, out), report, prov.str());
  return kExitOk;
}

int cmd_bench(const BenchOptions& opts, std::ostream& out, std::ostream&) {
  auto config = opts.config;
  config.config.band_radius = resolve_band(opts.band, config.intervals);
  config.config.validate(config.intervals);
  const auto rows = run_complexity_benchmark(config);
  std::ostringstream prov;
  prov << "command=bench\nintervals=" << config.intervals << "\nmemory=" << config.memory
       << "\nd_rep=" << config.d_rep << "\nthreshold=" << config.threshold << "\nnoise=" << config.noise
       << "\nrepeats=" << config.repeats << "\nseed=" << config.seed << "\nband=" << opts.band
       << "\nunits: 1 per stored sample, index, count or scalar";
  std::optional<std::ofstream> file;
  write_complexity_report(open_or(file, opts.out, out), rows, prov.str());
  return kExitOk;
}

}  // namespace rmstream::cli
