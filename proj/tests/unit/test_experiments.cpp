#include <doctest.h>

#include <sstream>

#include "rmstream/experiments.hpp"

using namespace rmstream;

TEST_CASE("lower median ranks undetected last") {
  CHECK(lower_median({1, 2, 3}) == 2u);
  CHECK(lower_median({4, 1, 3, 2}) == 2u);
  CHECK(lower_median({std::nullopt, 1, std::nullopt}) == std::nullopt);
  CHECK(lower_median({std::nullopt, 1, std::nullopt, 2}) == 2u);
  CHECK(lower_median({}) == std::nullopt);
}

TEST_CASE("closed-form stored units") {
  CHECK(expected_stored_units(Method::Additive, 100, 48, 15, 0) == 100 * 48 + 200 + 1);
  CHECK(expected_stored_units(Method::Fixed, 100, 48, 15, 0) == 15 * 48 + 30 + 1);
  CHECK(expected_stored_units(Method::Fixed, 10, 48, 15, 0) == 10 * 48 + 20 + 1);
  CHECK(expected_stored_units(Method::CodebookCR, 100, 48, 15, 7) == 7 * 48 + 100 + 200 + 1);
  CHECK(expected_stored_units(Method::CodebookPD, 100, 48, 15, 7) == 7 * 48 + 7 + 200 + 1);
}

TEST_CASE("small compression sweep writes a full table") {
  FleetSpec spec;
  spec.users = 2;
  spec.days = 12;
  spec.intervals = 8;
  const auto fleet = generate_fleet(spec);
  CompressionConfig cfg;
  cfg.lengths = {6, 12};
  cfg.d_reps = {0.0, 1.0};
  TrainingOptions t;
  t.epochs = 200;
  cfg.training = t;
  const auto report = run_compression_experiment(fleet, cfg);
  CHECK(report.rows.size() == 2 * 2 * 2);
  CHECK(report.summary.size() == 4);
  for (const auto& row : report.rows) {
    CHECK(row.codewords <= row.days);
    CHECK(row.stored_units == expected_stored_units(Method::CodebookPD, row.days, 8, 0, row.codewords));
  }
  std::ostringstream out;
  write_compression_report(out, report, "seed=1");
  CHECK(out.str().rfind("# seed=1\n", 0) == 0);
}

TEST_CASE("small switch study is deterministic") {
  SwitchExperimentConfig cfg;
  cfg.users = 3;
  cfg.days_before = 8;
  cfg.days_after = 6;
  cfg.intervals = 12;
  cfg.training_users = 6;
  cfg.training.epochs = 300;
  const auto a = run_switch_experiment(cfg);
  const auto b = run_switch_experiment(cfg);
  REQUIRE(a.rows.size() == 9);
  CHECK(a.summary.size() == 3);
  for (std::size_t i = 0; i < a.rows.size(); ++i) CHECK(a.rows[i].latency == b.rows[i].latency);
  std::ostringstream hist;
  write_latency_histogram(hist, a, "x");
  CHECK(hist.str().find("strategy,latency,users") != std::string::npos);
}
