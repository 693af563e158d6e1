#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "rmstream/batch_profile.hpp"
#include "rmstream/classifier.hpp"
#include "rmstream/core_model.hpp"

namespace rmstream {

/// Constant-memory profile over a window of at most `memory` days.
///
/// The window is kept in arrival order (index 0 is the oldest stored day).
/// Until the window fills, updates are additive. Afterwards each update drops
/// one stored day chosen by the drop strategy and appends the incoming day.
///
/// d_max is a running maximum over every pair that was ever stored together;
/// it never decreases when the day that produced it is dropped, so the stored
/// means are normalised by a value that may exceed the current window maximum.
class FixedMemoryState {
 public:
  struct Fields {
    std::vector<DayPattern> window;
    std::vector<SimilarityRecord> records;
    double d_max = 0.0;
    double threshold = 0.0;
    std::size_t memory = 15;
    DropStrategy strategy = DropStrategy::LowInertia;
    DistanceConfig config;
  };

  static FixedMemoryState from_day(DayPattern first, const ProfileParams& params,
                                   DistanceConfig cfg);
  /// Batch profile over the first min(|days|, memory) days, then streams the rest.
  static FixedMemoryState from_days(std::span<const DayPattern> days,
                                    const ProfileParams& params, DistanceConfig cfg);
  static FixedMemoryState from_fields(Fields fields);

  bool full() const noexcept { return f_.window.size() == f_.memory; }

  /// Window index the strategy would drop next. Requires a full window.
  ///   low    - oldest day
  ///   high   - lowest profile value, oldest on ties
  ///   medium - lower median profile value, oldest on ties
  std::size_t select_drop_index() const;

  void update(const DayPattern& day);

  const Fields& fields() const noexcept { return f_; }
  std::size_t size() const noexcept { return f_.window.size(); }
  std::size_t pattern_length() const noexcept { return f_.window.front().length(); }
  const std::vector<DayPattern>& window() const noexcept { return f_.window; }
  const std::vector<SimilarityRecord>& records() const noexcept { return f_.records; }
  double d_max() const noexcept { return f_.d_max; }
  double threshold() const noexcept { return f_.threshold; }
  std::size_t memory() const noexcept { return f_.memory; }
  DropStrategy strategy() const noexcept { return f_.strategy; }
  const DistanceConfig& config() const noexcept { return f_.config; }

  RefinedMotif refined_motif() const { return extract_rm(f_.records, f_.window); }
  MemoryFootprint footprint() const;

  friend bool operator==(const FixedMemoryState& a, const FixedMemoryState& b);

 private:
  explicit FixedMemoryState(Fields f) : f_(std::move(f)) {}
  void append(const DayPattern& day);
  void replace(std::size_t drop, const DayPattern& day);

  Fields f_;
};

[[nodiscard]] FixedMemoryState fixed_update(FixedMemoryState state, const DayPattern& day);

/// Settings for replaying one user's stream through a fixed-memory state.
struct SwitchDetectionSetup {
  ProfileParams params;
  DistanceConfig config;
};

/// Replays stream[0, switch_day) into a fresh fixed-memory state, records the
/// classifier's label on the refined motif, then feeds the post-switch days one
/// at a time. Returns the number of post-switch updates after which the label
/// first differs, or nullopt when it never does within the stream.
std::optional<std::size_t> detect_type_switch_latency(std::span<const DayPattern> stream,
                                                      std::size_t switch_day,
                                                      const ClassifierModel& classifier,
                                                      const SwitchDetectionSetup& setup);

}  // namespace rmstream
