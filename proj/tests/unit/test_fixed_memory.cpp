#include <doctest.h>

#include <random>

#include "../oracles.hpp"
#include "rmstream/error.hpp"
#include "rmstream/fixed_memory_updater.hpp"
#include "rmstream/synthetic.hpp"

using namespace rmstream;

namespace {

FixedMemoryState::Fields window_fields(std::vector<double> sp_like, DropStrategy s) {
  FixedMemoryState::Fields f;
  f.memory = sp_like.size();
  f.strategy = s;
  for (std::size_t i = 0; i < sp_like.size(); ++i) {
    f.window.push_back({i, {1.0 + static_cast<double>(i), 1.0}});
    // count - mean reproduces the desired value for small integers plus a fraction.
    const double whole = std::floor(sp_like[i]);
    const double frac = sp_like[i] - whole;
    f.records.push_back({static_cast<std::size_t>(whole) + (frac > 0 ? 1 : 0), frac > 0 ? 1 - frac : 0});
  }
  f.d_max = 1.0;
  return f;
}

}  // namespace

TEST_CASE("drop selection per strategy") {
  // Values: 2, 1, 3, 1, 2.
  auto f = window_fields({2, 1, 3, 1, 2}, DropStrategy::LowInertia);
  CHECK(FixedMemoryState::from_fields(f).select_drop_index() == 0);
  f.strategy = DropStrategy::HighInertia;
  CHECK(FixedMemoryState::from_fields(f).select_drop_index() == 1);  // oldest of the minima
  f.strategy = DropStrategy::MediumInertia;
  CHECK(FixedMemoryState::from_fields(f).select_drop_index() == 0);  // sorted 1,1,2,2,3 -> 2

  auto g = window_fields({3, 0, 2, 1}, DropStrategy::MediumInertia);
  CHECK(FixedMemoryState::from_fields(g).select_drop_index() == 3);  // lower median 1
}

TEST_CASE("drop selection needs a full window") {
  auto s = FixedMemoryState::from_day({0, {1, 2}}, ProfileParams{1.0, 0.0, 3}, DistanceConfig{});
  CHECK_THROWS_AS(s.select_drop_index(), Error);
}

TEST_CASE("window counts follow a window-batch recount at every step") {
  std::mt19937_64 rng(31);
  for (auto strategy : {DropStrategy::LowInertia, DropStrategy::MediumInertia,
                        DropStrategy::HighInertia}) {
    auto days = oracle::random_days(rng, 25, 6);
    DistanceConfig cfg;
    cfg.band_radius = 1;
    const double th = default_threshold(days, cfg);
    auto s = FixedMemoryState::from_day(days[0], ProfileParams{th, 0.0, 6, strategy}, cfg);
    for (std::size_t t = 1; t < days.size(); ++t) {
      s.update(days[t]);
      CHECK(s.size() == std::min<std::size_t>(t + 1, 6));
      const auto rc = oracle::batch_recount(s.window(), th, cfg, s.d_max());
      for (std::size_t i = 0; i < s.size(); ++i) {
        CHECK(s.records()[i].count == rc.counts[i]);
        CHECK(s.records()[i].norm_mean_dist == doctest::Approx(rc.means[i]).epsilon(1e-9));
      }
    }
  }
}

TEST_CASE("running d_max never decreases") {
  DistanceConfig cfg;
  auto s = FixedMemoryState::from_day({0, {0, 0}}, ProfileParams{0.1, 0.0, 2}, cfg);
  s.update({1, {10, 10}});
  const double peak = s.d_max();
  s.update({2, {10, 10}});
  s.update({3, {10, 10}});
  CHECK(s.d_max() == peak);
  CHECK(s.records()[0].norm_mean_dist == 0.0);
}

TEST_CASE("low inertia keeps arrival order") {
  DistanceConfig cfg;
  std::vector<DayPattern> days;
  for (std::size_t i = 0; i < 7; ++i) days.push_back({i, {double(i), 1.0, 2.0}});
  auto s = FixedMemoryState::from_days(days, ProfileParams{1.0, 0.0, 4}, cfg);
  REQUIRE(s.size() == 4);
  for (std::size_t i = 0; i < 4; ++i) CHECK(s.window()[i].day_index == 3 + i);
  CHECK(s.footprint().total() == 4 * 3 + 2 * 4 + 1);
}

TEST_CASE("switch latency on a clean stream") {
  SyntheticScenario sc;
  sc.archetype = Archetype::Solar;
  sc.switch_day = 10;
  sc.days = 20;
  const auto stream = generate_synthetic(sc);

  // A model that says "solar" when the midday reading is low.
  ClassifierModel model;
  model.weights.assign(48, 0.0);
  model.weights[25] = -20.0;
  model.bias = 5.0;
  const auto non = archetype_curve(Archetype::NonSolar, 48);
  const auto sol = archetype_curve(Archetype::Solar, 48);
  REQUIRE(predict(model, sol).positive);
  REQUIRE(!predict(model, non).positive);

  SwitchDetectionSetup setup{ProfileParams{0.5, 0.0, 5, DropStrategy::LowInertia}, DistanceConfig{}};
  const auto low = detect_type_switch_latency(stream, 10, model, setup);
  REQUIRE(low.has_value());
  CHECK(*low == 3);  // majority of a 5-day window

  setup.params.strategy = DropStrategy::HighInertia;
  const auto high = detect_type_switch_latency(stream, 10, model, setup);
  CHECK((!high.has_value() || *high > 4));

  CHECK(!detect_type_switch_latency(stream, 25, model, setup).has_value());
  CHECK_THROWS_AS(detect_type_switch_latency(stream, 0, model, setup), Error);
  CHECK_THROWS_AS(detect_type_switch_latency(stream, 5, ClassifierModel{}, setup), Error);
}
