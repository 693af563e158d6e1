#include <doctest.h>

#include <sstream>

#include "rmstream/csv_ingest.hpp"
#include "rmstream/error.hpp"

using namespace rmstream;

namespace {

std::string wide_header(std::size_t m) {
  std::string h = "user,date";
  for (std::size_t k = 0; k < m; ++k) h += ",v" + std::to_string(k);
  return h + "\n";
}

std::string wide_row(const std::string& user, const std::string& date, std::size_t m,
                     double base, std::size_t skip = static_cast<std::size_t>(-1)) {
  std::string r = user + "," + date;
  for (std::size_t k = 0; k < m; ++k) {
    r += ",";
    if (k != skip) r += std::to_string(base + 0.01 * static_cast<double>(k));
  }
  return r + "\n";
}

std::string clock(std::size_t slot) {
  char buf[8];
  std::snprintf(buf, sizeof buf, "%02zu:%02zu", slot / 2, (slot % 2) * 30);
  return buf;
}

}  // namespace

TEST_CASE("wide and long layouts give the same series") {
  std::string wide = wide_header(48) + wide_row("7", "2024-01-02", 48, 1.0) +
                     wide_row("7", "2024-01-01", 48, 2.0) + wide_row("12", "2024-01-01", 48, 3.0);
  std::string lng = "user,timestamp,value\n";
  auto emit = [&](const std::string& u, const std::string& d, double base) {
    for (std::size_t k = 0; k < 48; ++k) {
      lng += u + "," + d + " " + clock(k) + "," + std::to_string(base + 0.01 * double(k)) + "\n";
    }
  };
  emit("12", "2024-01-01", 3.0);
  emit("7", "2024-01-01", 2.0);
  emit("7", "2024-01-02", 1.0);

  std::istringstream a(wide), b(lng);
  DailyCsvSchema ws;
  DailyCsvSchema ls;
  ls.layout = CsvLayout::Long;
  const auto ra = parse_daily_csv(a, ws, {});
  const auto rb = parse_daily_csv(b, ls, {});
  REQUIRE(ra.users.size() == 2);
  CHECK(ra.users[0].user == "7");  // numeric ordering
  CHECK(ra.users[0].dates == std::vector<std::string>{"2024-01-01", "2024-01-02"});
  CHECK(ra.users[0].days[0].values[0] == doctest::Approx(2.0));
  CHECK(ra.users[0].days[1].day_index == 1);
  REQUIRE(rb.users.size() == 2);
  for (std::size_t u = 0; u < 2; ++u) {
    CHECK(ra.users[u].user == rb.users[u].user);
    CHECK(ra.users[u].days == rb.users[u].days);
  }
}

TEST_CASE("a day with 47 readings is rejected and reported") {
  std::string wide = wide_header(48) + wide_row("1", "2024-01-01", 48, 1.0, 10) +
                     wide_row("1", "2024-01-02", 48, 1.0);
  std::istringstream in(wide);
  const auto r = parse_daily_csv(in, DailyCsvSchema{}, {});
  REQUIRE(r.rejected.size() == 1);
  CHECK(r.rejected[0].readings == 47);
  CHECK(r.rejected[0].date == "2024-01-01");
  REQUIRE(r.users.size() == 1);
  CHECK(r.users[0].days.size() == 1);
  std::ostringstream rep;
  write_rejection_report(rep, r.rejected);
  CHECK(rep.str().rfind("user,date,readings,reason\n1,2024-01-01,47,", 0) == 0);

  std::istringstream again(wide);
  DailyCsvSchema interp;
  interp.missing = MissingPolicy::Interpolate;
  const auto r2 = parse_daily_csv(again, interp, {});
  CHECK(r2.rejected.empty());
  CHECK(r2.users[0].days[0].values[10] == doctest::Approx(1.10));
}

TEST_CASE("malformed rows name their line") {
  std::string wide = wide_header(2 * 0 + 48) + "1,2024-01-01,abc" + std::string(47, ',') + "\n";
  std::istringstream in(wide);
  try {
    parse_daily_csv(in, DailyCsvSchema{}, {});
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::InvalidInput);
    CHECK(std::string(e.what()).find("line 2") != std::string::npos);
  }
  std::istringstream short_header("user,date,v0\n");
  CHECK_THROWS_AS(parse_daily_csv(short_header, DailyCsvSchema{}, {}), Error);
}

TEST_CASE("solar home rows combine into net import") {
  std::string text = "Solar home electricity data\nCustomer,Generator Capacity,Postcode,Consumption Category,date";
  for (std::size_t k = 1; k <= 48; ++k) text += "," + clock(k % 48);
  text += "\n";
  auto row = [&](const std::string& cat, double v) {
    text += "1,3.5,2000," + cat + ",1/07/2012";
    for (std::size_t k = 0; k < 48; ++k) text += "," + std::to_string(v);
    text += "\n";
  };
  row("GC", 1.0);
  row("CL", 0.5);
  row("GG", 2.0);
  DailyCsvSchema s;
  s.layout = CsvLayout::SolarHome;
  std::istringstream a(text);
  const auto net = parse_daily_csv(a, s, {});
  REQUIRE(net.users.size() == 1);
  CHECK(net.users[0].dates[0] == "2012-07-01");
  CHECK(net.users[0].days[0].values[0] == 0.0);
  s.net_mode = NetMode::LoadOnly;
  std::istringstream b(text);
  CHECK(parse_daily_csv(b, s, {}).users[0].days[0].values[0] == doctest::Approx(1.5));
}

TEST_CASE("dates and reading rows") {
  CHECK(normalize_date("2024/3/7") == "2024-03-07");
  CHECK(normalize_date("7/3/2024") == "2024-03-07");
  CHECK_THROWS_AS(normalize_date("March 7"), Error);
  CHECK(parse_reading_row("1, 2.5,3") == std::vector<double>{1, 2.5, 3});
  CHECK_THROWS_AS(parse_reading_row("1,,3"), Error);
  DailyCsvSchema s;
  s.interval_minutes = 7;
  CHECK_THROWS_AS(s.readings_per_day(), Error);
  CHECK(parse_csv_layout("long") == CsvLayout::Long);
  CHECK_THROWS_AS(parse_csv_layout("tall"), Error);
}
