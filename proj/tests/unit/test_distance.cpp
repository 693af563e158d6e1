#include <doctest.h>

#include <random>

#include "../oracles.hpp"
#include "rmstream/distance.hpp"
#include "rmstream/error.hpp"

using namespace rmstream;

TEST_CASE("oracle enumeration agrees with the table on unequal lengths") {
  CHECK(oracle::dtw_enumerate({1, 2, 3}, {2, 3}) == doctest::Approx(1.0));
  CHECK(oracle::dtw_table({1, 2, 3}, {2, 3}) == doctest::Approx(1.0));
  CHECK(oracle::dtw_enumerate({0, 0, 1}, {0, 1, 1}) == doctest::Approx(0.0));
}

TEST_CASE("dtw matches path enumeration on small inputs") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.0, 3.0);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t m = 2 + trial % 5;
    std::vector<double> a(m), b(m), w(m);
    for (auto& v : a) v = u(rng);
    for (auto& v : b) v = u(rng);
    for (auto& v : w) v = 0.1 + u(rng);

    DistanceConfig cfg;
    const bool weighted = trial % 3 == 0;
    const bool squared = trial % 4 == 1;
    if (weighted) cfg.weights = w;
    if (squared) cfg.cost = CostKind::Squared;
    if (trial % 2 == 0) cfg.band_radius = std::min<std::size_t>(trial % 3, m - 1);
    const double expect = oracle::dtw_enumerate(a, b, weighted ? &w : nullptr, cfg.band_radius, squared);
    CHECK(dtw_distance(a, b, cfg) == doctest::Approx(expect).epsilon(1e-12));
  }
}

TEST_CASE("dtw matches the table oracle at m = 48 with a band") {
  std::mt19937_64 rng(11);
  auto days = oracle::random_days(rng, 6, 48);
  DistanceConfig cfg;
  cfg.band_radius = 6;
  for (std::size_t i = 0; i < days.size(); ++i) {
    for (std::size_t j = 0; j < days.size(); ++j) {
      CHECK(dtw_distance(days[i], days[j], cfg) ==
            doctest::Approx(oracle::dtw_table(days[i], days[j], cfg)).epsilon(1e-12));
    }
  }
}

TEST_CASE("dtw basic properties") {
  DistanceConfig cfg;
  std::vector<double> a{1, 2, 3, 4}, b{4, 3, 2, 1};
  CHECK(dtw_distance(a, a, cfg) == 0.0);
  CHECK(dtw_distance(a, b, cfg) == dtw_distance(b, a, cfg));
  cfg.band_radius = 0;
  CHECK(dtw_distance(a, b, cfg) == doctest::Approx(3 + 1 + 1 + 3));
}

TEST_CASE("weights make the distance directional") {
  DistanceConfig cfg;
  cfg.weights = std::vector<double>{2, 5, 2};
  DayPattern s{0, {1, 0, 2}}, t{1, {0, 3, 3}};
  const auto pd = pair_distance(s, t, cfg);
  CHECK(pd.from_stored == doctest::Approx(dtw_distance(s, t, cfg)));
  CHECK(pd.from_incoming == doctest::Approx(dtw_distance(t, s, cfg)));
  CHECK(pd.from_stored == doctest::Approx(6.0));
  CHECK(pd.from_incoming == doctest::Approx(9.0));
}

TEST_CASE("invalid distance inputs are rejected") {
  DistanceConfig cfg;
  std::vector<double> a{1, 2, 3}, b{1, 2};
  CHECK_THROWS_AS(dtw_distance(a, b, cfg), Error);
  std::vector<double> nan{1, std::nan(""), 3};
  CHECK_THROWS_AS(dtw_distance(a, nan, cfg), Error);
  cfg.weights = std::vector<double>{1, 1};
  CHECK_THROWS_AS(dtw_distance(a, a, cfg), Error);
  cfg.weights = std::vector<double>{1, -1, 1};
  CHECK_THROWS_AS(dtw_distance(a, a, cfg), Error);
}

TEST_CASE("pairwise matrix is symmetric without weights") {
  std::mt19937_64 rng(3);
  auto days = oracle::random_days(rng, 5, 12);
  const auto d = pairwise_distance_matrix(days, DistanceConfig{});
  for (std::size_t i = 0; i < 5; ++i) {
    CHECK(d(i, i) == 0.0);
    for (std::size_t j = 0; j < 5; ++j) CHECK(d(i, j) == d(j, i));
  }
  CHECK_THROWS_AS(pairwise_distance_matrix(std::span(days).first(1), DistanceConfig{}), Error);
}

TEST_CASE("slices and scaling are applied at preparation") {
  DistanceConfig cfg;
  cfg.day_slice = parse_day_slice("1:3");
  cfg.scale_days = true;
  std::vector<double> raw{9, 2, 4, 9};
  const auto day = prepare_day(4, raw, cfg);
  CHECK(day.day_index == 4);
  CHECK(day.values == std::vector<double>{0.5, 1.0});
  CHECK_THROWS_AS(parse_day_slice("3:1"), Error);
  CHECK_THROWS_AS(parse_day_slice("x"), Error);
  CHECK(default_band_radius(48) == 6);
  CHECK(default_band_radius(4) == 1);
}
