#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "rmstream/batch_profile.hpp"
#include "rmstream/core_model.hpp"

namespace rmstream {

/// Lossless append-only profile. Every incoming day is compared with every
/// stored day once; memory grows by one day per update.
class AdditiveState {
 public:
  struct Fields {
    std::vector<DayPattern> tsd;
    std::vector<SimilarityRecord> records;
    double d_max = 0.0;
    double threshold = 0.0;
    DistanceConfig config;
  };

  static AdditiveState from_batch(BatchProfile profile, DistanceConfig cfg);
  static AdditiveState from_day(DayPattern first, double threshold, DistanceConfig cfg);
  /// Batch profile over `days` (one-day seed when only one is given).
  static AdditiveState from_days(std::span<const DayPattern> days, double threshold,
                                 DistanceConfig cfg);
  /// Rebuilds a state from stored fields; throws CorruptState when they are
  /// mutually inconsistent.
  static AdditiveState from_fields(Fields fields);

  void update(const DayPattern& day);

  const Fields& fields() const noexcept { return f_; }
  std::size_t size() const noexcept { return f_.tsd.size(); }
  std::size_t pattern_length() const noexcept { return f_.tsd.front().length(); }
  const std::vector<SimilarityRecord>& records() const noexcept { return f_.records; }
  const std::vector<DayPattern>& tsd() const noexcept { return f_.tsd; }
  double d_max() const noexcept { return f_.d_max; }
  double threshold() const noexcept { return f_.threshold; }
  const DistanceConfig& config() const noexcept { return f_.config; }

  RefinedMotif refined_motif() const { return extract_rm(f_.records, f_.tsd); }
  /// N*m samples, 2N record scalars, d_max.
  MemoryFootprint footprint() const;

  friend bool operator==(const AdditiveState& a, const AdditiveState& b);

 private:
  explicit AdditiveState(Fields f) : f_(std::move(f)) {}
  Fields f_;
};

[[nodiscard]] AdditiveState additive_update(AdditiveState state, const DayPattern& day);

}  // namespace rmstream
