#include "rmstream/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "rmstream/error.hpp"

namespace rmstream {
namespace {

double bump(double hour, double centre, double width) {
  const double z = (hour - centre) / width;
  return std::exp(-z * z);
}

}  // namespace

const char* to_string(Archetype a) noexcept {
  return a == Archetype::Solar ? "solar" : "non-solar";
}

std::vector<double> archetype_curve(Archetype archetype, std::size_t intervals) {
  if (intervals < 2) fail(ErrorKind::InvalidInput, "a day needs at least 2 intervals");
  std::vector<double> curve(intervals);
  for (std::size_t k = 0; k < intervals; ++k) {
    const double hour = (static_cast<double>(k) + 0.5) * 24.0 / static_cast<double>(intervals);
    double load = 0.25 + 0.45 * bump(hour, 7.5, 1.2) + 0.25 * bump(hour, 13.0, 3.0) +
                  1.0 * bump(hour, 19.0, 1.8);
    if (archetype == Archetype::Solar) load -= 1.2 * bump(hour, 12.5, 2.6);
    curve[k] = std::max(0.0, load);
  }
  return curve;
}

std::vector<DayPattern> generate_synthetic(const SyntheticScenario& sc) {
  if (sc.noise < 0.0 || !std::isfinite(sc.noise)) {
    fail(ErrorKind::InvalidInput, "noise level must be finite and non-negative");
  }
  const Archetype other = sc.archetype == Archetype::Solar ? Archetype::NonSolar : Archetype::Solar;
  const auto first = archetype_curve(sc.archetype, sc.intervals);
  const auto second = archetype_curve(other, sc.intervals);

  std::mt19937_64 rng(sc.seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<DayPattern> out;
  out.reserve(sc.days);
  for (std::size_t d = 0; d < sc.days; ++d) {
    const bool switched = sc.switch_day && d >= *sc.switch_day;
    const auto& base = switched ? second : first;
    DayPattern day{d, base};
    if (sc.noise > 0.0) {
      for (double& v : day.values) v = std::max(0.0, v * (1.0 + sc.noise * gauss(rng)));
    }
    out.push_back(std::move(day));
  }
  return out;
}

}  // namespace rmstream
