#include "rmstream/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <map>
#include <ostream>

#include "rmstream/batch_profile.hpp"
#include "rmstream/error.hpp"

namespace rmstream {

std::uint64_t user_seed(std::uint64_t fleet_seed, std::size_t user) noexcept {
  // splitmix64 finaliser over (seed, user)
  std::uint64_t z = fleet_seed + 0x9E3779B97F4A7C15ULL * (static_cast<std::uint64_t>(user) + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::vector<FleetUser> generate_fleet(const FleetSpec& spec) {
  std::vector<FleetUser> fleet;
  fleet.reserve(spec.users);
  for (std::size_t u = 0; u < spec.users; ++u) {
    FleetUser user;
    char id[16];
    std::snprintf(id, sizeof id, "u%03zu", u);
    user.id = id;
    user.archetype = spec.archetype.value_or(u % 2 == 0 ? Archetype::Solar : Archetype::NonSolar);
    user.switch_day = spec.switch_day;
    user.days = generate_synthetic(SyntheticScenario{user.archetype, spec.switch_day, spec.days,
                                                     spec.noise, user_seed(spec.seed, u),
                                                     spec.intervals});
    fleet.push_back(std::move(user));
  }
  return fleet;
}

double user_threshold(std::span<const DayPattern> days, const MotifSettings& settings) {
  if (!settings.threshold_quantile) return settings.params.threshold;
  if (days.size() < 2) return 0.0;
  return default_threshold(days, settings.config, *settings.threshold_quantile);
}

UpdaterState build_user_state(std::span<const DayPattern> days, const MotifSettings& settings) {
  ProfileParams params = settings.params;
  params.threshold = user_threshold(days, settings);
  return init_state(days, settings.method, params, settings.config);
}

namespace {

bool ends_solar(const FleetUser& user) {
  const bool switched = user.switch_day && *user.switch_day < user.days.size();
  const bool solar = user.archetype == Archetype::Solar;
  return switched ? !solar : solar;
}

}  // namespace

std::vector<LabeledMotif> fleet_motifs(const std::vector<FleetUser>& fleet,
                                       const MotifSettings& settings) {
  std::vector<LabeledMotif> out;
  out.reserve(fleet.size());
  for (const auto& user : fleet) {
    const auto state = build_user_state(user.days, settings);
    out.push_back({refined_motif(state).pattern.values, ends_solar(user)});
  }
  return out;
}

std::optional<std::size_t> lower_median(std::vector<std::optional<std::size_t>> values) {
  if (values.empty()) return std::nullopt;
  std::sort(values.begin(), values.end(), [](const auto& a, const auto& b) {
    if (!a) return false;
    if (!b) return true;
    return *a < *b;
  });
  return values[(values.size() - 1) / 2];
}

SwitchReport run_switch_study(const std::vector<FleetUser>& fleet, const ClassifierModel& model,
                              std::size_t memory, double threshold_quantile,
                              const DistanceConfig& cfg) {
  constexpr DropStrategy kStrategies[] = {DropStrategy::LowInertia, DropStrategy::MediumInertia,
                                          DropStrategy::HighInertia};
  SwitchReport report;
  std::map<DropStrategy, std::vector<std::optional<std::size_t>>> by_strategy;
  for (const auto& user : fleet) {
    const std::size_t switch_day = user.switch_day.value_or(user.days.size());
    const std::size_t pre = std::min(switch_day, user.days.size());
    const auto pre_days = std::span<const DayPattern>(user.days).first(pre);
    const double th = pre >= 2 ? default_threshold(pre_days, cfg, threshold_quantile) : 0.0;
    for (auto strategy : kStrategies) {
      SwitchDetectionSetup setup{ProfileParams{th, 0.0, memory, strategy}, cfg};
      const auto latency =
          pre == 0 ? std::nullopt : detect_type_switch_latency(user.days, switch_day, model, setup);
      report.rows.push_back({user.id, strategy, latency});
      by_strategy[strategy].push_back(latency);
    }
  }
  for (auto strategy : kStrategies) {
    auto& lat = by_strategy[strategy];
    SwitchSummary s;
    s.strategy = strategy;
    s.users = lat.size();
    s.undetected = static_cast<std::size_t>(std::count(lat.begin(), lat.end(), std::nullopt));
    s.median_latency = lower_median(lat);
    report.summary.push_back(s);
  }
  return report;
}

SwitchReport run_switch_experiment(const SwitchExperimentConfig& c) {
  if (c.days_before < 2) fail(ErrorKind::InvalidInput, "need at least 2 days before the switch");
  if (c.memory < 2) fail(ErrorKind::InvalidInput, "memory must be >= 2");

  // Classifier fitted on refined motifs of a separate, switch-free fleet
  // processed with the same window size.
  FleetSpec train_spec{c.training_users, c.days_before, c.noise, c.seed ^ 0x5EEDULL, c.intervals,
                       std::nullopt, std::nullopt};
  const auto train_fleet = generate_fleet(train_spec);
  MotifSettings settings{Method::Fixed, ProfileParams{0.0, 0.0, c.memory, DropStrategy::LowInertia},
                         c.config, c.threshold_quantile};
  const auto samples = fleet_motifs(train_fleet, settings);
  const auto model = train(samples, c.training);

  FleetSpec spec{c.users, c.days_before + c.days_after, c.noise, c.seed, c.intervals, c.from,
                 c.switchless ? std::nullopt : std::optional<std::size_t>(c.days_before)};
  auto fleet = generate_fleet(spec);
  if (c.switchless) {
    for (auto& u : fleet) u.switch_day = c.days_before;
  }
  auto report = run_switch_study(fleet, model, c.memory, c.threshold_quantile, c.config);
  report.classifier_training_accuracy = accuracy(model, samples);
  return report;
}

namespace {

std::string latency_text(const std::optional<std::size_t>& v) {
  return v ? std::to_string(*v) : std::string("undetected");
}

void write_provenance(std::ostream& out, const std::string& provenance) {
  std::size_t start = 0;
  while (start < provenance.size()) {
    auto end = provenance.find('\n', start);
    if (end == std::string::npos) end = provenance.size();
    out << "# " << provenance.substr(start, end - start) << '\n';
    start = end + 1;
  }
}

}  // namespace

void write_switch_report(std::ostream& out, const SwitchReport& report,
                         const std::string& provenance) {
  write_provenance(out, provenance);
  out << "# classifier_training_accuracy=" << report.classifier_training_accuracy << '\n';
  for (const auto& s : report.summary) {
    out << "# summary strategy=" << to_string(s.strategy)
        << " median_latency=" << latency_text(s.median_latency) << " undetected=" << s.undetected
        << " users=" << s.users << '\n';
  }
  out << "user,strategy,latency\n";
  for (const auto& r : report.rows) {
    out << r.user << ',' << to_string(r.strategy) << ',' << latency_text(r.latency) << '\n';
  }
}

void write_latency_histogram(std::ostream& out, const SwitchReport& report,
                             const std::string& provenance) {
  write_provenance(out, provenance);
  out << "strategy,latency,users\n";
  std::map<std::pair<int, std::size_t>, std::size_t> bins;
  std::map<int, std::size_t> undetected;
  for (const auto& r : report.rows) {
    const int s = static_cast<int>(r.strategy);
    if (r.latency) {
      ++bins[{s, *r.latency}];
    } else {
      ++undetected[s];
    }
  }
  for (int s = 0; s < 3; ++s) {
    const char* name = to_string(static_cast<DropStrategy>(s));
    for (const auto& [key, n] : bins) {
      if (key.first == s) out << name << ',' << key.second << ',' << n << '\n';
    }
    out << name << ",undetected," << undetected[s] << '\n';
  }
}

CompressionReport run_compression_experiment(const std::vector<FleetUser>& fleet,
                                             const CompressionConfig& c) {
  CompressionReport report;
  std::map<std::pair<std::size_t, std::size_t>, std::vector<double>> savings;  // (length#, d_rep#)
  std::map<std::pair<std::size_t, std::size_t>, std::vector<LabeledMotif>> motifs;
  for (const auto& user : fleet) {
    for (std::size_t li = 0; li < c.lengths.size(); ++li) {
      const std::size_t len = std::min(c.lengths[li], user.days.size());
      if (len == 0) continue;
      const auto days = std::span<const DayPattern>(user.days).first(len);
      const double th = len >= 2 ? default_threshold(days, c.config, c.threshold_quantile) : 0.0;
      for (std::size_t di = 0; di < c.d_reps.size(); ++di) {
        ProfileParams params{th, c.d_reps[di], 2, DropStrategy::LowInertia};
        const auto state = CodebookState::from_days(days, c.variant, params, c.config);
        CompressionRow row;
        row.user = user.id;
        row.length = len;
        row.d_rep = c.d_reps[di];
        row.codewords = state.codeword_count();
        row.days = state.day_count();
        row.stored_units = state.footprint().total();
        row.saving = memory_saving(state, len);
        report.rows.push_back(row);
        savings[{li, di}].push_back(row.saving);
        motifs[{li, di}].push_back({state.refined_motif().pattern.values, ends_solar(user)});
      }
    }
  }
  for (std::size_t li = 0; li < c.lengths.size(); ++li) {
    for (std::size_t di = 0; di < c.d_reps.size(); ++di) {
      const auto& v = savings[{li, di}];
      if (v.empty()) continue;
      CompressionSummary s;
      s.length = c.lengths[li];
      s.d_rep = c.d_reps[di];
      double total = 0.0;
      for (double x : v) total += x;
      s.mean_saving = total / static_cast<double>(v.size());
      const auto& samples = motifs[{li, di}];
      const bool both = std::any_of(samples.begin(), samples.end(), [](auto& m) { return m.positive; }) &&
                        std::any_of(samples.begin(), samples.end(), [](auto& m) { return !m.positive; });
      if (c.training && both) s.accuracy = accuracy(train(samples, *c.training), samples);
      report.summary.push_back(s);
    }
  }
  return report;
}

void write_compression_report(std::ostream& out, const CompressionReport& report,
                              const std::string& provenance) {
  write_provenance(out, provenance);
  out << "# units: 1 per stored sample, index/occurrence count, record scalar or constant; "
         "saving = 1 - (codeword samples + index units) / (days * m)\n";
  for (const auto& s : report.summary) {
    out << "# summary length=" << s.length << " d_rep=" << s.d_rep << " mean_saving=" << s.mean_saving
        << " accuracy=" << (s.accuracy ? std::to_string(*s.accuracy) : std::string("na")) << '\n';
  }
  out << "user,length,d_rep,codewords,days,stored_units,saving\n";
  for (const auto& r : report.rows) {
    out << r.user << ',' << r.length << ',' << r.d_rep << ',' << r.codewords << ',' << r.days << ','
        << r.stored_units << ',' << r.saving << '\n';
  }
}

std::size_t expected_stored_units(Method method, std::size_t days, std::size_t m,
                                  std::size_t memory, std::size_t codewords) {
  switch (method) {
    case Method::Additive: return days * m + 2 * days + 1;
    case Method::Fixed: {
      const std::size_t kept = std::min(days, memory);
      return kept * m + 2 * kept + 1;
    }
    case Method::CodebookCR: return codewords * m + days + 2 * days + 1;
    case Method::CodebookPD: return codewords * m + codewords + 2 * days + 1;
  }
  return 0;
}

std::vector<ComplexityRow> run_complexity_benchmark(const ComplexityConfig& c) {
  using clock = std::chrono::steady_clock;
  std::vector<ComplexityRow> rows;
  const std::size_t longest = c.sizes.empty() ? 0 : *std::max_element(c.sizes.begin(), c.sizes.end());
  const auto stream = generate_synthetic(
      SyntheticScenario{Archetype::Solar, std::nullopt, longest + c.repeats, c.noise, c.seed, c.intervals});
  const ProfileParams params{c.threshold, c.d_rep, c.memory, DropStrategy::LowInertia};

  for (Method method : c.methods) {
    for (std::size_t n : c.sizes) {
      if (n < 1) continue;
      auto state = init_state(std::span<const DayPattern>(stream).first(n), method, params, c.config);
      std::vector<double> times;
      times.reserve(c.repeats);
      for (std::size_t r = 0; r < c.repeats; ++r) {
        UpdaterState trial = state;
        const auto& day = stream[longest + r];
        const auto t0 = clock::now();
        update_state(trial, day);
        const auto t1 = clock::now();
        times.push_back(std::chrono::duration<double>(t1 - t0).count());
      }
      std::nth_element(times.begin(), times.begin() + static_cast<std::ptrdiff_t>(times.size() / 2),
                       times.end());

      ComplexityRow row;
      row.method = method;
      row.history = n;
      row.seconds_per_update = times.empty() ? 0.0 : times[times.size() / 2];
      row.stored_units = footprint(state).total();
      std::size_t codewords = 0;
      if (const auto* cb = std::get_if<CodebookState>(&state)) {
        codewords = cb->codeword_count();
        row.saving = memory_saving(*cb, n);
      }
      row.expected_units = expected_stored_units(method, n, c.intervals, c.memory, codewords);
      rows.push_back(row);
    }
  }
  return rows;
}

void write_complexity_report(std::ostream& out, const std::vector<ComplexityRow>& rows,
                             const std::string& provenance) {
  write_provenance(out, provenance);
  out << "method,history,seconds_per_update,stored_units,expected_units,saving\n";
  for (const auto& r : rows) {
    out << to_string(r.method) << ',' << r.history << ',' << r.seconds_per_update << ','
        << r.stored_units << ',' << r.expected_units << ','
        << (r.saving ? std::to_string(*r.saving) : std::string()) << '\n';
  }
}

}  // namespace rmstream
