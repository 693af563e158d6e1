#include "rmstream/csv_ingest.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <map>
#include <optional>
#include <ostream>

#include "rmstream/error.hpp"

namespace rmstream {
namespace {

std::string trim(std::string_view s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

// Comma split with double-quote support ("" escapes a quote).
std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        cur += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        cur += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      out.push_back(trim(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(trim(cur));
  return out;
}

[[noreturn]] void line_error(std::size_t line, const std::string& what) {
  fail(ErrorKind::InvalidInput, "line " + std::to_string(line) + ": " + what);
}

std::optional<double> parse_number(const std::string& cell, std::size_t line) {
  if (cell.empty()) return std::nullopt;
  double v = 0.0;
  const char* first = cell.data();
  if (*first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, cell.data() + cell.size(), v);
  if (ec != std::errc() || ptr != cell.data() + cell.size() || !std::isfinite(v)) {
    line_error(line, "'" + cell + "' is not a number");
  }
  return v;
}

bool parse_uint(std::string_view s, int& out) {
  if (s.empty()) return false;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size();
}

// Orders numeric user ids numerically and everything else lexically.
struct UserLess {
  bool operator()(const std::string& a, const std::string& b) const {
    const bool an = !a.empty() && std::all_of(a.begin(), a.end(), ::isdigit);
    const bool bn = !b.empty() && std::all_of(b.begin(), b.end(), ::isdigit);
    if (an && bn && a.size() != b.size()) return a.size() < b.size();
    if (an != bn) return an;
    return a < b;
  }
};

struct RawDay {
  std::vector<std::optional<double>> readings;
  std::string problem;  // non-empty: reject regardless of policy
};

using DayMap = std::map<std::string, std::map<std::string, RawDay>, UserLess>;

std::size_t column_index(const std::vector<std::string>& header, const std::string& name) {
  auto it = std::find(header.begin(), header.end(), name);
  if (it == header.end()) fail(ErrorKind::InvalidInput, "line 1: missing column '" + name + "'");
  return static_cast<std::size_t>(it - header.begin());
}

bool read_row(std::istream& in, std::string& line, std::size_t& line_no) {
  while (std::getline(in, line)) {
    ++line_no;
    if (!trim(line).empty()) return true;
  }
  return false;
}

// Linear interpolation across interior gaps, constant extension at the edges.
bool fill_gaps(std::vector<std::optional<double>>& r) {
  std::vector<std::size_t> known;
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (r[i]) known.push_back(i);
  }
  if (known.size() < 2) return false;
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (r[i]) continue;
    auto hi = std::upper_bound(known.begin(), known.end(), i);
    if (hi == known.begin()) {
      r[i] = *r[known.front()];
    } else if (hi == known.end()) {
      r[i] = *r[known.back()];
    } else {
      const std::size_t a = *(hi - 1), b = *hi;
      const double t = static_cast<double>(i - a) / static_cast<double>(b - a);
      r[i] = *r[a] + t * (*r[b] - *r[a]);
    }
  }
  return true;
}

IngestResult finish(DayMap& days, const DailyCsvSchema& schema, const DistanceConfig& cfg) {
  IngestResult out;
  const std::size_t m = schema.readings_per_day();
  for (auto& [user, by_date] : days) {
    UserSeries series{user, {}, {}};
    for (auto& [date, raw] : by_date) {
      const auto present = static_cast<std::size_t>(
          std::count_if(raw.readings.begin(), raw.readings.end(), [](auto& v) { return v.has_value(); }));
      if (!raw.problem.empty()) {
        out.rejected.push_back({user, date, present, raw.problem});
        continue;
      }
      if (present != m) {
        if (schema.missing == MissingPolicy::Reject || !fill_gaps(raw.readings)) {
          out.rejected.push_back({user, date, present,
                                  "expected " + std::to_string(m) + " readings"});
          continue;
        }
      }
      std::vector<double> values(m);
      bool negative = false;
      for (std::size_t k = 0; k < m; ++k) {
        values[k] = *raw.readings[k];
        negative = negative || values[k] < 0.0;
      }
      if (negative) {
        out.rejected.push_back({user, date, present, "negative reading"});
        continue;
      }
      series.days.push_back(prepare_day(series.days.size(), values, cfg));
      series.dates.push_back(date);
    }
    if (!series.days.empty()) out.users.push_back(std::move(series));
  }
  return out;
}

void parse_wide(std::istream& in, const DailyCsvSchema& schema, DayMap& days) {
  std::string line;
  std::size_t line_no = 0;
  if (!read_row(in, line, line_no)) fail(ErrorKind::InvalidInput, "empty CSV input");
  const auto header = split_csv(line);
  const auto user_col = column_index(header, schema.user_column);
  const auto date_col = column_index(header, schema.date_column);
  std::vector<std::size_t> value_cols;
  for (std::size_t c = 0; c < header.size(); ++c) {
    if (c != user_col && c != date_col) value_cols.push_back(c);
  }
  const std::size_t m = schema.readings_per_day();
  if (value_cols.size() != m) {
    fail(ErrorKind::InvalidInput, "line " + std::to_string(line_no) + ": expected " +
                                      std::to_string(m) + " reading columns, found " +
                                      std::to_string(value_cols.size()));
  }
  while (read_row(in, line, line_no)) {
    const auto cells = split_csv(line);
    if (cells.size() != header.size()) {
      line_error(line_no, "expected " + std::to_string(header.size()) + " fields, found " +
                              std::to_string(cells.size()));
    }
    const auto& user = cells[user_col];
    if (user.empty()) line_error(line_no, "empty user id");
    std::string date;
    try {
      date = normalize_date(cells[date_col]);
    } catch (const Error& e) {
      line_error(line_no, e.what());
    }
    auto [it, fresh] = days[user].try_emplace(date);
    RawDay& raw = it->second;
    if (!fresh) {
      raw.problem = "duplicate day";
      continue;
    }
    raw.readings.resize(m);
    for (std::size_t k = 0; k < m; ++k) raw.readings[k] = parse_number(cells[value_cols[k]], line_no);
  }
}

void parse_long(std::istream& in, const DailyCsvSchema& schema, DayMap& days) {
  std::string line;
  std::size_t line_no = 0;
  if (!read_row(in, line, line_no)) fail(ErrorKind::InvalidInput, "empty CSV input");
  const auto header = split_csv(line);
  const auto user_col = column_index(header, schema.user_column);
  const auto ts_col = column_index(header, schema.timestamp_column);
  const auto value_col = column_index(header, schema.value_column);
  const std::size_t m = schema.readings_per_day();
  while (read_row(in, line, line_no)) {
    const auto cells = split_csv(line);
    if (cells.size() != header.size()) {
      line_error(line_no, "expected " + std::to_string(header.size()) + " fields, found " +
                              std::to_string(cells.size()));
    }
    const auto& user = cells[user_col];
    if (user.empty()) line_error(line_no, "empty user id");
    const auto& ts = cells[ts_col];
    const auto sep = ts.find_first_of(" T");
    if (sep == std::string::npos) line_error(line_no, "timestamp '" + ts + "' lacks a time part");
    std::string date;
    try {
      date = normalize_date(ts.substr(0, sep));
    } catch (const Error& e) {
      line_error(line_no, e.what());
    }
    const std::string clock = ts.substr(sep + 1);
    int hh = 0, mm = 0;
    const auto colon = clock.find(':');
    if (colon == std::string::npos ||
        !parse_uint(std::string_view(clock).substr(0, colon), hh) ||
        !parse_uint(std::string_view(clock).substr(colon + 1, 2), mm) || hh > 23 || mm > 59) {
      line_error(line_no, "bad time '" + clock + "'");
    }
    const int minute = hh * 60 + mm;
    if (minute % schema.interval_minutes != 0) {
      line_error(line_no, "time '" + clock + "' is not on a " +
                              std::to_string(schema.interval_minutes) + "-minute boundary");
    }
    const auto slot = static_cast<std::size_t>(minute / schema.interval_minutes);
    const auto value = parse_number(cells[value_col], line_no);
    RawDay& raw = days[user][date];
    if (raw.readings.empty()) raw.readings.resize(m);
    if (raw.readings[slot]) {
      raw.problem = "duplicate reading";
      continue;
    }
    raw.readings[slot] = value;
  }
}

void parse_solar_home(std::istream& in, const DailyCsvSchema& schema, DayMap& days) {
  std::string line;
  std::size_t line_no = 0;
  std::vector<std::string> header;
  // The published files carry a title line above the header.
  while (read_row(in, line, line_no)) {
    header = split_csv(line);
    if (std::find(header.begin(), header.end(), "Consumption Category") != header.end()) break;
    header.clear();
  }
  if (header.empty()) fail(ErrorKind::InvalidInput, "no 'Consumption Category' header found");
  const auto user_col = column_index(header, "Customer");
  const auto cat_col = column_index(header, "Consumption Category");
  const auto date_col = column_index(header, "date");
  const std::size_t m = schema.readings_per_day();
  if (header.size() < date_col + 1 + m) {
    fail(ErrorKind::InvalidInput, "header has fewer than " + std::to_string(m) +
                                      " reading columns after 'date'");
  }

  struct Channels {
    std::optional<std::vector<std::optional<double>>> gc, cl, gg;
    std::string problem;
  };
  std::map<std::string, std::map<std::string, Channels>, UserLess> raw;
  while (read_row(in, line, line_no)) {
    const auto cells = split_csv(line);
    if (cells.size() < date_col + 1 + m) {
      line_error(line_no, "expected at least " + std::to_string(date_col + 1 + m) +
                              " fields, found " + std::to_string(cells.size()));
    }
    std::string date;
    try {
      date = normalize_date(cells[date_col]);
    } catch (const Error& e) {
      line_error(line_no, e.what());
    }
    std::vector<std::optional<double>> readings(m);
    for (std::size_t k = 0; k < m; ++k) readings[k] = parse_number(cells[date_col + 1 + k], line_no);
    Channels& ch = raw[cells[user_col]][date];
    const auto& cat = cells[cat_col];
    auto* slot = cat == "GC" ? &ch.gc : cat == "CL" ? &ch.cl : cat == "GG" ? &ch.gg : nullptr;
    if (!slot) line_error(line_no, "unknown consumption category '" + cat + "'");
    if (slot->has_value()) ch.problem = "duplicate " + cat + " row";
    *slot = std::move(readings);
  }

  for (auto& [user, by_date] : raw) {
    for (auto& [date, ch] : by_date) {
      RawDay& out = days[user][date];
      out.readings.assign(m, std::nullopt);
      out.problem = ch.problem;
      if (!ch.gc) {
        out.problem = "no general consumption (GC) row";
        continue;
      }
      for (std::size_t k = 0; k < m; ++k) {
        const auto& g = (*ch.gc)[k];
        if (!g) continue;
        double v = *g;
        if (ch.cl) {
          if (!(*ch.cl)[k]) continue;
          v += *(*ch.cl)[k];
        }
        if (schema.net_mode == NetMode::Net && ch.gg) {
          if (!(*ch.gg)[k]) continue;
          v = std::max(0.0, v - *(*ch.gg)[k]);
        }
        out.readings[k] = v;
      }
    }
  }
}

}  // namespace

CsvLayout parse_csv_layout(const std::string& text) {
  if (text == "wide") return CsvLayout::Wide;
  if (text == "long") return CsvLayout::Long;
  if (text == "solar-home") return CsvLayout::SolarHome;
  fail(ErrorKind::InvalidInput, "unknown CSV layout '" + text + "' (wide|long|solar-home)");
}

MissingPolicy parse_missing_policy(const std::string& text) {
  if (text == "reject") return MissingPolicy::Reject;
  if (text == "interpolate") return MissingPolicy::Interpolate;
  fail(ErrorKind::InvalidInput, "unknown missing-reading policy '" + text + "'");
}

NetMode parse_net_mode(const std::string& text) {
  if (text == "net") return NetMode::Net;
  if (text == "load-only") return NetMode::LoadOnly;
  fail(ErrorKind::InvalidInput, "unknown net mode '" + text + "' (net|load-only)");
}

std::size_t DailyCsvSchema::readings_per_day() const {
  if (interval_minutes <= 0 || 1440 % interval_minutes != 0) {
    fail(ErrorKind::InvalidInput, "interval length must divide 1440 minutes");
  }
  return static_cast<std::size_t>(1440 / interval_minutes);
}

std::string normalize_date(const std::string& text) {
  const std::string t = trim(text);
  int y = 0, mo = 0, d = 0;
  bool ok = false;
  auto parts = [&](char sep) {
    std::vector<std::string_view> out;
    std::string_view sv(t);
    std::size_t start = 0;
    for (std::size_t i = 0; i <= sv.size(); ++i) {
      if (i == sv.size() || sv[i] == sep) {
        out.push_back(sv.substr(start, i - start));
        start = i + 1;
      }
    }
    return out;
  };
  if (auto p = parts('-'); p.size() == 3) {
    ok = p[0].size() == 4 && parse_uint(p[0], y) && parse_uint(p[1], mo) && parse_uint(p[2], d);
  } else if (auto q = parts('/'); q.size() == 3) {
    if (q[0].size() == 4) {
      ok = parse_uint(q[0], y) && parse_uint(q[1], mo) && parse_uint(q[2], d);
    } else {
      ok = q[2].size() == 4 && parse_uint(q[0], d) && parse_uint(q[1], mo) && parse_uint(q[2], y);
    }
  }
  if (!ok || mo < 1 || mo > 12 || d < 1 || d > 31) {
    fail(ErrorKind::InvalidInput, "unrecognised date '" + t + "'");
  }
  char buf[16];
  std::snprintf(buf, sizeof buf, "%04d-%02d-%02d", y, mo, d);
  return buf;
}

IngestResult parse_daily_csv(std::istream& in, const DailyCsvSchema& schema,
                             const DistanceConfig& cfg) {
  DayMap days;
  switch (schema.layout) {
    case CsvLayout::Wide: parse_wide(in, schema, days); break;
    case CsvLayout::Long: parse_long(in, schema, days); break;
    case CsvLayout::SolarHome: parse_solar_home(in, schema, days); break;
  }
  return finish(days, schema, cfg);
}

IngestResult load_daily_csv(const std::filesystem::path& path, const DailyCsvSchema& schema,
                            const DistanceConfig& cfg) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::Io, "cannot open " + path.string());
  return parse_daily_csv(in, schema, cfg);
}

void write_rejection_report(std::ostream& out, std::span<const RejectedDay> rejected) {
  out << "user,date,readings,reason\n";
  for (const auto& r : rejected) {
    out << r.user << ',' << r.date << ',' << r.readings << ',' << r.reason << '\n';
  }
}

std::vector<double> parse_reading_row(const std::string& row) {
  const auto cells = split_csv(row);
  std::vector<double> out;
  out.reserve(cells.size());
  for (const auto& c : cells) {
    auto v = parse_number(c, 1);
    if (!v) fail(ErrorKind::InvalidInput, "day row has an empty reading");
    out.push_back(*v);
  }
  return out;
}

}  // namespace rmstream
