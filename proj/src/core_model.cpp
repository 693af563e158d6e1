#include "rmstream/core_model.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>

#include "rmstream/error.hpp"

namespace rmstream {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::InvalidInput: return "invalid input";
    case ErrorKind::InvalidState: return "invalid state";
    case ErrorKind::CorruptState: return "corrupt state";
    case ErrorKind::UnsupportedVersion: return "unsupported version";
    case ErrorKind::Io: return "i/o error";
  }
  return "error";
}

void validate_pattern(const DayPattern& day, std::size_t expected_length) {
  if (day.values.size() < 2) {
    fail(ErrorKind::InvalidInput, "day " + std::to_string(day.day_index) +
                                      ": pattern needs at least 2 readings");
  }
  if (expected_length != 0 && day.values.size() != expected_length) {
    fail(ErrorKind::InvalidInput,
         "day " + std::to_string(day.day_index) + ": expected " +
             std::to_string(expected_length) + " readings, got " +
             std::to_string(day.values.size()));
  }
  for (double v : day.values) {
    if (!std::isfinite(v) || v < 0.0) {
      fail(ErrorKind::InvalidInput, "day " + std::to_string(day.day_index) +
                                        ": readings must be finite and non-negative");
    }
  }
}

DaySlice parse_day_slice(const std::string& text) {
  auto colon = text.find(':');
  if (colon == std::string::npos) {
    fail(ErrorKind::InvalidInput, "slice must look like a:b, got '" + text + "'");
  }
  auto parse = [&](std::string_view part) {
    std::size_t v = 0;
    auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), v);
    if (ec != std::errc() || ptr != part.data() + part.size()) {
      fail(ErrorKind::InvalidInput, "slice must look like a:b, got '" + text + "'");
    }
    return v;
  };
  std::string_view sv(text);
  DaySlice s{parse(sv.substr(0, colon)), parse(sv.substr(colon + 1))};
  if (s.end < s.begin + 2) {
    fail(ErrorKind::InvalidInput, "slice '" + text + "' keeps fewer than 2 intervals");
  }
  return s;
}

void DistanceConfig::validate(std::size_t m) const {
  if (m < 2) fail(ErrorKind::InvalidInput, "pattern length must be >= 2");
  if (band_radius && *band_radius > m - 1) {
    fail(ErrorKind::InvalidInput, "band radius " + std::to_string(*band_radius) +
                                      " outside [0, " + std::to_string(m - 1) + "]");
  }
  if (weights) {
    if (weights->size() != m) {
      fail(ErrorKind::InvalidInput, "weights have length " +
                                        std::to_string(weights->size()) + ", expected " +
                                        std::to_string(m));
    }
    bool any_positive = false;
    for (double w : *weights) {
      if (!std::isfinite(w) || w < 0.0) {
        fail(ErrorKind::InvalidInput, "weights must be finite and non-negative");
      }
      any_positive = any_positive || w > 0.0;
    }
    if (!any_positive) fail(ErrorKind::InvalidInput, "weights are all zero");
  }
}

std::size_t default_band_radius(std::size_t m) noexcept { return (m + 7) / 8; }

DayPattern prepare_day(std::size_t day_index, std::span<const double> raw,
                       const DistanceConfig& cfg) {
  DayPattern day{day_index, {}};
  if (cfg.day_slice) {
    const auto& s = *cfg.day_slice;
    if (s.end > raw.size() || s.begin >= s.end) {
      fail(ErrorKind::InvalidInput, "slice " + std::to_string(s.begin) + ":" +
                                        std::to_string(s.end) + " does not fit a day of " +
                                        std::to_string(raw.size()) + " readings");
    }
    day.values.assign(raw.begin() + static_cast<std::ptrdiff_t>(s.begin),
                      raw.begin() + static_cast<std::ptrdiff_t>(s.end));
  } else {
    day.values.assign(raw.begin(), raw.end());
  }
  if (cfg.scale_days) {
    double peak = day.values.empty() ? 0.0 : *std::max_element(day.values.begin(), day.values.end());
    if (peak > 0.0) {
      for (double& v : day.values) v /= peak;
    }
  }
  validate_pattern(day);
  return day;
}

const char* to_string(DropStrategy s) noexcept {
  switch (s) {
    case DropStrategy::LowInertia: return "low";
    case DropStrategy::MediumInertia: return "medium";
    case DropStrategy::HighInertia: return "high";
  }
  return "low";
}

DropStrategy parse_drop_strategy(const std::string& text) {
  if (text == "low") return DropStrategy::LowInertia;
  if (text == "medium") return DropStrategy::MediumInertia;
  if (text == "high") return DropStrategy::HighInertia;
  fail(ErrorKind::InvalidInput, "unknown strategy '" + text + "' (low|medium|high)");
}

std::vector<std::string> ProfileParams::validate() const {
  if (!std::isfinite(threshold) || threshold < 0.0) {
    fail(ErrorKind::InvalidInput, "threshold must be finite and non-negative");
  }
  if (!std::isfinite(d_rep) || d_rep < 0.0) {
    fail(ErrorKind::InvalidInput, "d_rep must be finite and non-negative");
  }
  if (memory < 2) fail(ErrorKind::InvalidInput, "memory must be >= 2");
  std::vector<std::string> warnings;
  if (d_rep > threshold) {
    warnings.push_back("d_rep exceeds the similarity threshold: replaced days may count as dissimilar to their codeword");
  }
  return warnings;
}

}  // namespace rmstream
