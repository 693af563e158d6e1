#include <doctest.h>

#include <algorithm>
#include <random>

#include "../oracles.hpp"
#include "rmstream/additive_updater.hpp"
#include "rmstream/codebook_updater.hpp"
#include "rmstream/error.hpp"

using namespace rmstream;

namespace {

ProfileParams params(double th, double d_rep) { return ProfileParams{th, d_rep, 15, {}}; }

}  // namespace

TEST_CASE("d_rep zero on distinct days is the additive state") {
  std::mt19937_64 rng(41);
  auto days = oracle::random_days(rng, 20, 12);
  DistanceConfig cfg;
  cfg.band_radius = 2;
  const double th = default_threshold(days, cfg);
  for (auto variant : {CodebookVariant::WithCR, CodebookVariant::PatternsDictionary}) {
    auto cb = CodebookState::from_days(days, variant, params(th, 0.0), cfg);
    auto add = AdditiveState::from_day(days[0], th, cfg);
    for (std::size_t t = 1; t < days.size(); ++t) add.update(days[t]);
    CHECK(cb.codeword_count() == days.size());
    CHECK(cb.records() == add.records());
    CHECK(cb.d_max() == add.d_max());
    CHECK(cb.refined_motif().pattern == add.refined_motif().pattern);
  }
}

TEST_CASE("recover_tsd round trips at d_rep zero") {
  std::mt19937_64 rng(42);
  auto days = oracle::random_days(rng, 10, 4);
  auto cb = CodebookState::from_days(days, CodebookVariant::WithCR, params(1.0, 0.0), {});
  const auto back = recover_tsd(cb.codewords(), cb.cr());
  CHECK(back == days);
  std::vector<std::size_t> bad{0, 99};
  CHECK_THROWS_AS(recover_tsd(cb.codewords(), bad), Error);
}

TEST_CASE("replacement uses the nearest codeword within d_rep") {
  DistanceConfig cfg;
  cfg.band_radius = 0;
  std::vector<DayPattern> days{{0, {0, 0}}, {1, {4, 4}}, {2, {3.5, 4}}, {3, {0.2, 0}}, {4, {2, 2}}};
  auto cb = CodebookState::from_days(days, CodebookVariant::WithCR, params(1.0, 1.0), cfg);
  CHECK(cb.codeword_count() == 3);
  CHECK(cb.cr() == std::vector<std::size_t>{0, 1, 1, 0, 2});
  CHECK(cb.codeword_of_record(3) == 0);

  auto pd = CodebookState::from_days(days, CodebookVariant::PatternsDictionary, params(1.0, 1.0), cfg);
  CHECK(pd.occurrences() == std::vector<std::size_t>{2, 2, 1});
  CHECK(pd.codeword_of_record(1) == 0);
  CHECK(pd.codeword_of_record(2) == 1);
}

TEST_CASE("a replaced day's record is computed from the day itself") {
  DistanceConfig cfg;
  cfg.band_radius = 0;
  std::vector<DayPattern> days{{0, {0, 0}}, {1, {0.5, 0}}};
  auto cb = CodebookState::from_days(days, CodebookVariant::WithCR, params(1.0, 1.0), cfg);
  CHECK(cb.codeword_count() == 1);
  CHECK(cb.records()[1].count == 1);
  CHECK(cb.d_max() == doctest::Approx(0.5));
}

TEST_CASE("variants agree on the record multiset with replacements") {
  std::mt19937_64 rng(43);
  for (int trial = 0; trial < 10; ++trial) {
    auto days = oracle::random_days(rng, 30, 6, 1.0);
    DistanceConfig cfg;
    const double th = default_threshold(days, cfg);
    const double d_rep = th * 0.8;
    auto cr = CodebookState::from_days(days, CodebookVariant::WithCR, params(th, d_rep), cfg);
    auto pd = CodebookState::from_days(days, CodebookVariant::PatternsDictionary, params(th, d_rep), cfg);
    CHECK(cr.codewords() == pd.codewords());
    auto a = cr.records(), b = pd.records();
    auto by_value = [](const SimilarityRecord& x, const SimilarityRecord& y) {
      return x.count != y.count ? x.count < y.count : x.norm_mean_dist < y.norm_mean_dist;
    };
    std::sort(a.begin(), a.end(), by_value);
    std::sort(b.begin(), b.end(), by_value);
    for (std::size_t i = 0; i < a.size(); ++i) {
      CHECK(a[i].count == b[i].count);
      CHECK(a[i].norm_mean_dist == doctest::Approx(b[i].norm_mean_dist).epsilon(1e-9));
    }
  }
}

TEST_CASE("footprint and saving accounting") {
  DistanceConfig cfg;
  cfg.band_radius = 0;
  std::vector<DayPattern> days{{0, {0, 0, 0}}, {1, {0, 0, 0.1}}, {2, {5, 5, 5}}, {3, {0.1, 0, 0}}};
  auto cr = CodebookState::from_days(days, CodebookVariant::WithCR, params(1.0, 0.5), cfg);
  auto pd = CodebookState::from_days(days, CodebookVariant::PatternsDictionary, params(1.0, 0.5), cfg);
  REQUIRE(cr.codeword_count() == 2);
  CHECK(cr.footprint().total() == 2 * 3 + 4 + 2 * 4 + 1);
  CHECK(pd.footprint().total() == 2 * 3 + 2 + 2 * 4 + 1);
  CHECK(memory_saving(cr, 4) == doctest::Approx(1.0 - (6.0 + 4.0) / 12.0));
  CHECK(memory_saving(pd, 4) == doctest::Approx(1.0 - (6.0 + 2.0) / 12.0));
  CHECK_THROWS_AS(memory_saving(pd, 0), Error);
}

TEST_CASE("inconsistent codebook fields are corrupt") {
  auto cb = CodebookState::from_days(std::vector<DayPattern>{{0, {1, 2}}, {1, {2, 1}}},
                                     CodebookVariant::PatternsDictionary, params(1.0, 0.0), {});
  auto f = cb.fields();
  f.occurrences = {1, 2};
  CHECK_THROWS_AS(CodebookState::from_fields(f), Error);
  f = cb.fields();
  f.cr = {0, 1};
  CHECK_THROWS_AS(CodebookState::from_fields(f), Error);
  CHECK(CodebookState::from_fields(cb.fields()) == cb);
}
