#include "rmstream/additive_updater.hpp"

#include <algorithm>
#include <cmath>

#include "record_math.hpp"
#include "rmstream/distance.hpp"
#include "rmstream/error.hpp"

namespace rmstream {

AdditiveState AdditiveState::from_batch(BatchProfile profile, DistanceConfig cfg) {
  return from_fields(Fields{std::move(profile.tsd), std::move(profile.records), profile.d_max,
                            profile.threshold, std::move(cfg)});
}

AdditiveState AdditiveState::from_day(DayPattern first, double threshold, DistanceConfig cfg) {
  validate_pattern(first);
  cfg.validate(first.length());
  if (!std::isfinite(threshold) || threshold < 0.0) {
    fail(ErrorKind::InvalidInput, "threshold must be finite and non-negative");
  }
  Fields f;
  f.tsd.push_back(std::move(first));
  f.records.push_back({});
  f.threshold = threshold;
  f.config = std::move(cfg);
  return AdditiveState(std::move(f));
}

AdditiveState AdditiveState::from_days(std::span<const DayPattern> days, double threshold,
                                       DistanceConfig cfg) {
  if (days.empty()) fail(ErrorKind::InvalidInput, "no days to initialise from");
  if (days.size() == 1) return from_day(days.front(), threshold, std::move(cfg));
  auto batch = compute_similarity_profile(days, threshold, cfg);
  return from_batch(std::move(batch), std::move(cfg));
}

AdditiveState AdditiveState::from_fields(Fields f) {
  if (f.tsd.empty() || f.records.size() != f.tsd.size()) {
    fail(ErrorKind::CorruptState, "additive state: days and records disagree");
  }
  const std::size_t m = f.tsd.front().length();
  for (const auto& day : f.tsd) {
    if (day.length() != m) fail(ErrorKind::CorruptState, "additive state: mixed pattern lengths");
  }
  for (const auto& r : f.records) {
    if (r.count >= f.tsd.size() || !(r.norm_mean_dist >= 0.0 && r.norm_mean_dist <= 1.0)) {
      fail(ErrorKind::CorruptState, "additive state: record out of range");
    }
  }
  if (!(f.d_max >= 0.0) || !std::isfinite(f.d_max) || !(f.threshold >= 0.0)) {
    fail(ErrorKind::CorruptState, "additive state: bad d_max or threshold");
  }
  return AdditiveState(std::move(f));
}

void AdditiveState::update(const DayPattern& day) {
  validate_pattern(day, pattern_length());
  const std::size_t n = f_.tsd.size();

  std::vector<PairDistance> dist(n);
  double new_d_max = f_.d_max;
  for (std::size_t i = 0; i < n; ++i) {
    dist[i] = pair_distance(f_.tsd[i], day, f_.config);
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
  f_.tsd.push_back(day);
  f_.records.push_back(incoming);
}

MemoryFootprint AdditiveState::footprint() const {
  return MemoryFootprint{size() * pattern_length(), 0, 2 * size(), 1};
}

bool operator==(const AdditiveState& a, const AdditiveState& b) {
  return a.f_.tsd == b.f_.tsd && a.f_.records == b.f_.records && a.f_.d_max == b.f_.d_max &&
         a.f_.threshold == b.f_.threshold && a.f_.config == b.f_.config;
}

AdditiveState additive_update(AdditiveState state, const DayPattern& day) {
  state.update(day);
  return state;
}

}  // namespace rmstream
