#include "rmstream/fixed_memory_updater.hpp"

#include <algorithm>
#include <cmath>

#include "record_math.hpp"
#include "rmstream/distance.hpp"
#include "rmstream/error.hpp"

namespace rmstream {

FixedMemoryState FixedMemoryState::from_day(DayPattern first, const ProfileParams& params,
                                            DistanceConfig cfg) {
  params.validate();
  validate_pattern(first);
  cfg.validate(first.length());
  Fields f;
  f.window.push_back(std::move(first));
  f.records.push_back({});
  f.threshold = params.threshold;
  f.memory = params.memory;
  f.strategy = params.strategy;
  f.config = std::move(cfg);
  return FixedMemoryState(std::move(f));
}

FixedMemoryState FixedMemoryState::from_days(std::span<const DayPattern> days,
                                             const ProfileParams& params, DistanceConfig cfg) {
  if (days.empty()) fail(ErrorKind::InvalidInput, "no days to initialise from");
  params.validate();
  const std::size_t seed = std::min(days.size(), params.memory);
  FixedMemoryState state = [&] {
    if (seed == 1) return from_day(days.front(), params, cfg);
    auto batch = compute_similarity_profile(days.first(seed), params.threshold, cfg);
    Fields f{std::move(batch.tsd), std::move(batch.records), batch.d_max, params.threshold,
             params.memory, params.strategy, cfg};
    return FixedMemoryState(std::move(f));
  }();
  for (const auto& day : days.subspan(seed)) state.update(day);
  return state;
}

FixedMemoryState FixedMemoryState::from_fields(Fields f) {
  if (f.window.empty() || f.records.size() != f.window.size()) {
    fail(ErrorKind::CorruptState, "fixed-memory state: window and records disagree");
  }
  if (f.memory < 2 || f.window.size() > f.memory) {
    fail(ErrorKind::CorruptState, "fixed-memory state: window exceeds its memory");
  }
  const std::size_t m = f.window.front().length();
  for (const auto& day : f.window) {
    if (day.length() != m) fail(ErrorKind::CorruptState, "fixed-memory state: mixed pattern lengths");
  }
  for (const auto& r : f.records) {
    if (r.count >= f.window.size() || !(r.norm_mean_dist >= 0.0 && r.norm_mean_dist <= 1.0)) {
      fail(ErrorKind::CorruptState, "fixed-memory state: record out of range");
    }
  }
  if (!(f.d_max >= 0.0) || !std::isfinite(f.d_max) || !(f.threshold >= 0.0)) {
    fail(ErrorKind::CorruptState, "fixed-memory state: bad d_max or threshold");
  }
  return FixedMemoryState(std::move(f));
}

std::size_t FixedMemoryState::select_drop_index() const {
  if (!full()) fail(ErrorKind::InvalidState, "drop selection needs a full window");
  const auto& recs = f_.records;
  switch (f_.strategy) {
    case DropStrategy::LowInertia:
      return 0;
    case DropStrategy::HighInertia: {
      std::size_t best = 0;
      for (std::size_t i = 1; i < recs.size(); ++i) {
        if (recs[i].sp_value() < recs[best].sp_value()) best = i;
      }
      return best;
    }
    case DropStrategy::MediumInertia: {
      std::vector<double> sp(recs.size());
      std::transform(recs.begin(), recs.end(), sp.begin(),
                     [](const SimilarityRecord& r) { return r.sp_value(); });
      std::vector<double> sorted = sp;
      const std::size_t mid = (sorted.size() - 1) / 2;
      std::nth_element(sorted.begin(), sorted.begin() + static_cast<std::ptrdiff_t>(mid),
                       sorted.end());
      const double median = sorted[mid];
      return static_cast<std::size_t>(std::find(sp.begin(), sp.end(), median) - sp.begin());
    }
  }
  return 0;
}

void FixedMemoryState::update(const DayPattern& day) {
  validate_pattern(day, pattern_length());
  if (full()) {
    replace(select_drop_index(), day);
  } else {
    append(day);
  }
}

void FixedMemoryState::append(const DayPattern& day) {
  const std::size_t n = f_.window.size();
  std::vector<PairDistance> dist(n);
  double new_d_max = f_.d_max;
  for (std::size_t i = 0; i < n; ++i) {
    dist[i] = pair_distance(f_.window[i], day, f_.config);
    new_d_max = std::max({new_d_max, dist[i].from_stored, dist[i].from_incoming});
  }
  SimilarityRecord incoming;
  double incoming_sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    auto& rec = f_.records[i];
    if (dist[i].from_stored <= f_.threshold) ++rec.count;
    if (dist[i].from_incoming <= f_.threshold) ++incoming.count;
    rec.norm_mean_dist = detail::renormalize(rec.norm_mean_dist, n - 1, f_.d_max,
                                             dist[i].from_stored, n, new_d_max);
    incoming_sum += dist[i].from_incoming;
  }
  incoming.norm_mean_dist = detail::normalized(incoming_sum, n, new_d_max);
  f_.d_max = new_d_max;
  f_.window.push_back(day);
  f_.records.push_back(incoming);
}

void FixedMemoryState::replace(std::size_t drop, const DayPattern& day) {
  const DayPattern out = std::move(f_.window[drop]);
  f_.window.erase(f_.window.begin() + static_cast<std::ptrdiff_t>(drop));
  f_.records.erase(f_.records.begin() + static_cast<std::ptrdiff_t>(drop));

  // Every remaining day loses its distance to `out` and gains one to `day`;
  // the neighbour count stays at memory - 1.
  const std::size_t n = f_.window.size();
  std::vector<double> d_out(n);
  std::vector<PairDistance> d_in(n);
  double new_d_max = f_.d_max;
  for (std::size_t i = 0; i < n; ++i) {
    d_out[i] = dtw_distance(f_.window[i], out, f_.config);
    d_in[i] = pair_distance(f_.window[i], day, f_.config);
    new_d_max = std::max({new_d_max, d_in[i].from_stored, d_in[i].from_incoming});
  }

  SimilarityRecord incoming;
  double incoming_sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    auto& rec = f_.records[i];
    if (d_out[i] <= f_.threshold) --rec.count;
    if (d_in[i].from_stored <= f_.threshold) ++rec.count;
    if (d_in[i].from_incoming <= f_.threshold) ++incoming.count;
    rec.norm_mean_dist = detail::renormalize(rec.norm_mean_dist, n, f_.d_max,
                                             d_in[i].from_stored - d_out[i], n, new_d_max);
    incoming_sum += d_in[i].from_incoming;
  }
  incoming.norm_mean_dist = detail::normalized(incoming_sum, n, new_d_max);
  f_.d_max = new_d_max;
  f_.window.push_back(day);
  f_.records.push_back(incoming);
}

MemoryFootprint FixedMemoryState::footprint() const {
  return MemoryFootprint{size() * pattern_length(), 0, 2 * size(), 1};
}

bool operator==(const FixedMemoryState& a, const FixedMemoryState& b) {
  return a.f_.window == b.f_.window && a.f_.records == b.f_.records && a.f_.d_max == b.f_.d_max &&
         a.f_.threshold == b.f_.threshold && a.f_.memory == b.f_.memory &&
         a.f_.strategy == b.f_.strategy && a.f_.config == b.f_.config;
}

FixedMemoryState fixed_update(FixedMemoryState state, const DayPattern& day) {
  state.update(day);
  return state;
}

std::optional<std::size_t> detect_type_switch_latency(std::span<const DayPattern> stream,
                                                      std::size_t switch_day,
                                                      const ClassifierModel& classifier,
                                                      const SwitchDetectionSetup& setup) {
  if (!classifier.trained()) fail(ErrorKind::InvalidState, "classifier has not been trained");
  if (switch_day == 0) fail(ErrorKind::InvalidInput, "switch day must leave at least one prior day");
  if (switch_day >= stream.size()) return std::nullopt;

  auto state = FixedMemoryState::from_days(stream.first(switch_day), setup.params, setup.config);
  const bool before = predict(classifier, state.refined_motif()).positive;
  for (std::size_t t = switch_day; t < stream.size(); ++t) {
    state.update(stream[t]);
    if (predict(classifier, state.refined_motif()).positive != before) return t - switch_day + 1;
  }
  return std::nullopt;
}

}  // namespace rmstream
