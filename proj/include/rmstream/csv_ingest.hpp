#pragma once

// Daily CSV ingestion for smart-meter readings.
//
// Three layouts are understood:
//   wide       user,date,v0,...,v{m-1}          one row per user-day
//   long       user,timestamp,value             one row per reading
//   solar-home Customer,...,Consumption Category,date,0:30,...,0:00
//              one row per user-day-channel (GC/CL/GG), combined into net
//              import (GC + CL - GG, clipped at 0) or load only (GC + CL)

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "rmstream/core_model.hpp"

namespace rmstream {

enum class CsvLayout { Wide, Long, SolarHome };
enum class MissingPolicy { Reject, Interpolate };
enum class NetMode { Net, LoadOnly };

CsvLayout parse_csv_layout(const std::string& text);
MissingPolicy parse_missing_policy(const std::string& text);
NetMode parse_net_mode(const std::string& text);

struct DailyCsvSchema {
  CsvLayout layout = CsvLayout::Wide;
  std::string user_column = "user";
  std::string date_column = "date";
  std::string timestamp_column = "timestamp";
  std::string value_column = "value";
  int interval_minutes = 30;
  MissingPolicy missing = MissingPolicy::Reject;
  NetMode net_mode = NetMode::Net;

  /// Readings per complete day, 1440 / interval_minutes.
  std::size_t readings_per_day() const;
};

struct RejectedDay {
  std::string user;
  std::string date;
  std::size_t readings = 0;
  std::string reason;
};

struct UserSeries {
  std::string user;
  std::vector<std::string> dates;  // ISO yyyy-mm-dd, parallel to days
  std::vector<DayPattern> days;    // chronological, day_index 0..n-1
};

struct IngestResult {
  std::vector<UserSeries> users;  // ordered by user id
  std::vector<RejectedDay> rejected;
};

/// Parses readings and applies cfg's day slice and scaling to every accepted
/// day. Malformed rows throw InvalidInput naming the line number; incomplete
/// days are reported in `rejected` (or gap-filled under Interpolate).
IngestResult parse_daily_csv(std::istream& in, const DailyCsvSchema& schema,
                             const DistanceConfig& cfg);

IngestResult load_daily_csv(const std::filesystem::path& path, const DailyCsvSchema& schema,
                            const DistanceConfig& cfg);

/// CSV: user,date,readings,reason
void write_rejection_report(std::ostream& out, std::span<const RejectedDay> rejected);

/// Parses a single comma-separated row of readings (the `update --day` form).
std::vector<double> parse_reading_row(const std::string& row);

/// Normalises yyyy-mm-dd, yyyy/mm/dd or d/m/yyyy to yyyy-mm-dd.
std::string normalize_date(const std::string& text);

}  // namespace rmstream
