#include "rmstream/updater.hpp"

#include "rmstream/error.hpp"

namespace rmstream {

const char* to_string(Method m) noexcept {
  switch (m) {
    case Method::Additive: return "additive";
    case Method::Fixed: return "fixed";
    case Method::CodebookCR: return "codebook-cr";
    case Method::CodebookPD: return "codebook-pd";
  }
  return "additive";
}

Method parse_method(const std::string& text) {
  if (text == "additive") return Method::Additive;
  if (text == "fixed") return Method::Fixed;
  if (text == "codebook-cr") return Method::CodebookCR;
  if (text == "codebook-pd") return Method::CodebookPD;
  fail(ErrorKind::InvalidInput,
       "unknown method '" + text + "' (additive|fixed|codebook-cr|codebook-pd)");
}

Method method_of(const UpdaterState& state) noexcept {
  switch (state.index()) {
    case 0: return Method::Additive;
    case 1: return Method::Fixed;
    default:
      return std::get<CodebookState>(state).variant() == CodebookVariant::WithCR
                 ? Method::CodebookCR
                 : Method::CodebookPD;
  }
}

UpdaterState init_state(std::span<const DayPattern> days, Method method,
                        const ProfileParams& params, const DistanceConfig& cfg) {
  params.validate();
  switch (method) {
    case Method::Additive: return AdditiveState::from_days(days, params.threshold, cfg);
    case Method::Fixed: return FixedMemoryState::from_days(days, params, cfg);
    case Method::CodebookCR:
      return CodebookState::from_days(days, CodebookVariant::WithCR, params, cfg);
    case Method::CodebookPD:
      return CodebookState::from_days(days, CodebookVariant::PatternsDictionary, params, cfg);
  }
  fail(ErrorKind::InvalidInput, "unknown method");
}

void update_state(UpdaterState& state, const DayPattern& day) {
  std::visit([&](auto& s) { s.update(day); }, state);
}

RefinedMotif refined_motif(const UpdaterState& state) {
  return std::visit([](const auto& s) { return s.refined_motif(); }, state);
}

MemoryFootprint footprint(const UpdaterState& state) {
  return std::visit([](const auto& s) { return s.footprint(); }, state);
}

std::size_t pattern_length(const UpdaterState& state) {
  return std::visit([](const auto& s) { return s.pattern_length(); }, state);
}

double threshold_of(const UpdaterState& state) {
  return std::visit([](const auto& s) { return s.threshold(); }, state);
}

const DistanceConfig& config_of(const UpdaterState& state) {
  return std::visit([](const auto& s) -> const DistanceConfig& { return s.config(); }, state);
}

const std::vector<SimilarityRecord>& records_of(const UpdaterState& state) {
  return std::visit(
      [](const auto& s) -> const std::vector<SimilarityRecord>& { return s.records(); }, state);
}

}  // namespace rmstream
