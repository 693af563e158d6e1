#pragma once

// Uniform handle over the three updater states.

#include <span>
#include <string>
#include <variant>

#include "rmstream/additive_updater.hpp"
#include "rmstream/codebook_updater.hpp"
#include "rmstream/fixed_memory_updater.hpp"

namespace rmstream {

enum class Method { Additive, Fixed, CodebookCR, CodebookPD };

const char* to_string(Method m) noexcept;
Method parse_method(const std::string& text);

using UpdaterState = std::variant<AdditiveState, FixedMemoryState, CodebookState>;

Method method_of(const UpdaterState& state) noexcept;

UpdaterState init_state(std::span<const DayPattern> days, Method method,
                        const ProfileParams& params, const DistanceConfig& cfg);

void update_state(UpdaterState& state, const DayPattern& day);

RefinedMotif refined_motif(const UpdaterState& state);
MemoryFootprint footprint(const UpdaterState& state);
std::size_t pattern_length(const UpdaterState& state);
double threshold_of(const UpdaterState& state);
const DistanceConfig& config_of(const UpdaterState& state);
const std::vector<SimilarityRecord>& records_of(const UpdaterState& state);

}  // namespace rmstream
