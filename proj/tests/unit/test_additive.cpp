#include <doctest.h>

#include <random>

#include "../oracles.hpp"
#include "rmstream/additive_updater.hpp"
#include "rmstream/error.hpp"

using namespace rmstream;

namespace {

void check_against_recount(const AdditiveState& s) {
  const auto rc = oracle::batch_recount(s.tsd(), s.threshold(), s.config());
  REQUIRE(s.records().size() == rc.counts.size());
  CHECK(oracle::close(s.d_max(), rc.d_max));
  for (std::size_t i = 0; i < rc.counts.size(); ++i) {
    CHECK(s.records()[i].count == rc.counts[i]);
    CHECK(oracle::close(s.records()[i].norm_mean_dist, rc.means[i]));
  }
  CHECK(s.refined_motif().source_index == oracle::argmax(rc));
}

}  // namespace

TEST_CASE("streaming from one day reproduces the batch profile") {
  std::mt19937_64 rng(5);
  auto days = oracle::random_days(rng, 20, 12);
  DistanceConfig cfg;
  cfg.band_radius = 2;
  const double th = default_threshold(days, cfg);
  auto s = AdditiveState::from_day(days[0], th, cfg);
  for (std::size_t t = 1; t < days.size(); ++t) {
    s.update(days[t]);
    if (t >= 1) check_against_recount(s);
  }
}

TEST_CASE("batch seed then stream agrees with the recount") {
  std::mt19937_64 rng(6);
  auto days = oracle::random_days(rng, 12, 4);
  DistanceConfig cfg;
  const double th = default_threshold(days, cfg);
  auto s = AdditiveState::from_days(std::span(days).first(4), th, cfg);
  for (std::size_t t = 4; t < days.size(); ++t) s = additive_update(s, days[t]);
  check_against_recount(s);
  CHECK(s.size() == 12);
  const auto fp = s.footprint();
  CHECK(fp.total() == 12 * 4 + 2 * 12 + 1);
}

TEST_CASE("directional weights are streamed per direction") {
  std::mt19937_64 rng(8);
  auto days = oracle::random_days(rng, 10, 6);
  DistanceConfig cfg;
  cfg.weights = std::vector<double>{3, 1, 0.5, 0.5, 1, 2};
  const double th = default_threshold(days, cfg);
  auto s = AdditiveState::from_day(days[0], th, cfg);
  for (std::size_t t = 1; t < days.size(); ++t) s.update(days[t]);
  check_against_recount(s);
}

TEST_CASE("a first day of constant zeros keeps means finite") {
  DistanceConfig cfg;
  auto s = AdditiveState::from_day({0, {0, 0, 0}}, 0.0, cfg);
  s.update({1, {0, 0, 0}});
  CHECK(s.records()[0] == SimilarityRecord{1, 0.0});
  s.update({2, {1, 1, 1}});
  check_against_recount(s);
}

TEST_CASE("updates reject patterns of the wrong shape") {
  auto s = AdditiveState::from_day({0, {1, 2, 3}}, 1.0, DistanceConfig{});
  CHECK_THROWS_AS(s.update({1, {1, 2}}), Error);
  CHECK_THROWS_AS(s.update({1, {1, -2, 3}}), Error);
  CHECK(s.size() == 1);
  CHECK_THROWS_AS(AdditiveState::from_day({0, {1, 2}}, -1.0, DistanceConfig{}), Error);
}

TEST_CASE("inconsistent stored fields are corrupt") {
  AdditiveState::Fields f;
  f.tsd = {{0, {1, 2}}, {1, {2, 3}}};
  f.records = {{0, 0.5}};
  CHECK_THROWS_AS(AdditiveState::from_fields(f), Error);
  f.records = {{0, 0.5}, {2, 0.5}};
  CHECK_THROWS_AS(AdditiveState::from_fields(f), Error);
  f.records = {{0, 0.5}, {1, 1.5}};
  CHECK_THROWS_AS(AdditiveState::from_fields(f), Error);
}
