#include <doctest.h>

#include "rmstream/distance.hpp"
#include "rmstream/experiments.hpp"
#include "rmstream/synthetic.hpp"

using namespace rmstream;

TEST_CASE("archetypes differ at midday and agree in the evening") {
  const auto non = archetype_curve(Archetype::NonSolar, 48);
  const auto sol = archetype_curve(Archetype::Solar, 48);
  REQUIRE(non.size() == 48);
  CHECK(sol[25] < non[25]);
  CHECK(sol[38] == doctest::Approx(non[38]).epsilon(0.01));
  for (double v : sol) CHECK(v >= 0.0);
}

TEST_CASE("generation is deterministic and switches archetype") {
  SyntheticScenario sc;
  sc.noise = 0.05;
  sc.seed = 9;
  sc.switch_day = 5;
  sc.days = 10;
  const auto a = generate_synthetic(sc);
  const auto b = generate_synthetic(sc);
  CHECK(a == b);
  REQUIRE(a.size() == 10);
  CHECK(a[3].values[25] < a[7].values[25]);
  sc.seed = 10;
  CHECK(generate_synthetic(sc) != a);
  for (const auto& d : a) {
    for (double v : d.values) CHECK(v >= 0.0);
  }
}

TEST_CASE("fleet alternates archetypes with distinct seeds") {
  FleetSpec spec;
  spec.users = 4;
  spec.days = 3;
  const auto fleet = generate_fleet(spec);
  REQUIRE(fleet.size() == 4);
  CHECK(fleet[0].id == "u000");
  CHECK(fleet[0].archetype == Archetype::Solar);
  CHECK(fleet[1].archetype == Archetype::NonSolar);
  CHECK(fleet[0].days != fleet[2].days);
  CHECK(user_seed(1, 0) != user_seed(1, 1));
}
