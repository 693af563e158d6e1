#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rmstream/core_model.hpp"

namespace rmstream {

enum class Archetype { Solar, NonSolar };

const char* to_string(Archetype a) noexcept;

/// A generated household. Non-solar days follow a morning/evening double-peak
/// import curve; solar days subtract a midday generation bell from the same
/// curve (clipped at zero import). From `switch_day` on, the archetype flips.
struct SyntheticScenario {
  Archetype archetype = Archetype::Solar;
  std::optional<std::size_t> switch_day;
  std::size_t days = 30;
  double noise = 0.0;  // relative per-reading gaussian noise
  std::uint64_t seed = 0;
  std::size_t intervals = 48;
};

/// Noise-free import curve of one archetype over `intervals` readings.
std::vector<double> archetype_curve(Archetype archetype, std::size_t intervals);

/// Deterministic in the scenario (including seed).
std::vector<DayPattern> generate_synthetic(const SyntheticScenario& scenario);

}  // namespace rmstream
