#pragma once

// Domain types shared by the distance, profile and updater modules.

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace rmstream {

/// One day of interval readings (kWh per interval), tagged with its ordinal day.
struct DayPattern {
  std::size_t day_index = 0;
  std::vector<double> values;

  std::size_t length() const noexcept { return values.size(); }

  friend bool operator==(const DayPattern&, const DayPattern&) = default;
};

/// Throws InvalidInput unless the pattern has >= 2 finite, non-negative
/// readings and (when expected_length != 0) exactly expected_length of them.
void validate_pattern(const DayPattern& day, std::size_t expected_length = 0);

/// Similarity profile entry, kept as its two components. The scalar profile
/// value is derived on demand so a neighbour at exactly the maximum distance
/// stays distinguishable from an extra similar day.
struct SimilarityRecord {
  std::size_t count = 0;        // similar days within the threshold
  double norm_mean_dist = 0.0;  // mean distance / d_max, in [0, 1]

  double sp_value() const noexcept {
    return static_cast<double>(count) - norm_mean_dist;
  }

  friend bool operator==(const SimilarityRecord&, const SimilarityRecord&) = default;
};

inline double sp_value(const SimilarityRecord& rec) noexcept { return rec.sp_value(); }

enum class CostKind { Absolute, Squared };

/// Half-open interval range [begin, end) kept from each raw day at ingestion.
struct DaySlice {
  std::size_t begin = 0;
  std::size_t end = 0;

  friend bool operator==(const DaySlice&, const DaySlice&) = default;
};

/// Parses "a:b" into a DaySlice. Throws InvalidInput on malformed text.
DaySlice parse_day_slice(const std::string& text);

struct DistanceConfig {
  std::optional<std::size_t> band_radius;     // Sakoe-Chiba half-width
  std::optional<std::vector<double>> weights;  // per-interval, query axis
  std::optional<DaySlice> day_slice;
  CostKind cost = CostKind::Absolute;
  bool scale_days = false;  // divide each ingested day by its own maximum

  /// True when d(a, b) == d(b, a) is guaranteed.
  bool symmetric() const noexcept { return !weights.has_value(); }

  /// Validates band and weights against the (post-slice) pattern length.
  void validate(std::size_t m) const;

  friend bool operator==(const DistanceConfig&, const DistanceConfig&) = default;
};

/// ceil(m / 8): the band used by the command-line tools unless overridden.
std::size_t default_band_radius(std::size_t m) noexcept;

/// Applies the slice and optional max-scaling of cfg to one raw day.
DayPattern prepare_day(std::size_t day_index, std::span<const double> raw,
                       const DistanceConfig& cfg);

enum class DropStrategy { LowInertia, MediumInertia, HighInertia };

const char* to_string(DropStrategy s) noexcept;
DropStrategy parse_drop_strategy(const std::string& text);

struct ProfileParams {
  double threshold = 0.0;  // days i, j similar iff d(i, j) <= threshold
  double d_rep = 0.0;      // codeword replaceability threshold
  std::size_t memory = 15;
  DropStrategy strategy = DropStrategy::LowInertia;

  /// Throws InvalidInput on hard violations; returns human-readable warnings
  /// for allowed-but-odd combinations (d_rep above the threshold).
  std::vector<std::string> validate() const;
};

struct RefinedMotif {
  DayPattern pattern;
  double sp_value = 0.0;
  std::size_t source_index = 0;
};

/// Stored-scalar accounting. One unit per sample, index, count or scalar.
struct MemoryFootprint {
  std::size_t pattern_units = 0;  // stored pattern samples
  std::size_t index_units = 0;    // compressed-representation indices or occurrence counts
  std::size_t record_units = 0;   // 2 per similarity record
  std::size_t scalar_units = 0;   // d_max and similar constants

  std::size_t total() const noexcept {
    return pattern_units + index_units + record_units + scalar_units;
  }
};

}  // namespace rmstream
