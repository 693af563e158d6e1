#pragma once

// Reference implementations that share no code with the library. They are
// slow on purpose and only used to check the library on small inputs.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <random>
#include <vector>

#include "rmstream/core_model.hpp"

namespace oracle {

inline double local_cost(double a, double b, double w, bool squared) {
  const double d = a - b;
  return w * (squared ? d * d : std::fabs(d));
}

struct PathSearch {
  const std::vector<double>& q;
  const std::vector<double>& r;
  const std::vector<double>* w;
  std::optional<std::size_t> band;
  bool squared;
  double best = std::numeric_limits<double>::infinity();

  bool inside(std::size_t i, std::size_t j) const {
    if (!band) return true;
    const std::size_t gap = i > j ? i - j : j - i;
    return gap <= *band;
  }

  void walk(std::size_t i, std::size_t j, double acc) {
    if (!inside(i, j)) return;
    acc += local_cost(q[i], r[j], w ? (*w)[i] : 1.0, squared);
    if (i + 1 == q.size() && j + 1 == r.size()) {
      best = std::min(best, acc);
      return;
    }
    if (i + 1 < q.size()) walk(i + 1, j, acc);
    if (j + 1 < r.size()) walk(i, j + 1, acc);
    if (i + 1 < q.size() && j + 1 < r.size()) walk(i + 1, j + 1, acc);
  }
};

/// Minimum over every monotone, continuous warping path. Exponential; keep lengths <= 7.
inline double dtw_enumerate(const std::vector<double>& q, const std::vector<double>& r,
                            const std::vector<double>* weights = nullptr,
                            std::optional<std::size_t> band = std::nullopt,
                            bool squared = false) {
  PathSearch s{q, r, weights, band, squared};
  s.walk(0, 0, 0.0);
  return s.best;
}

/// Textbook full-matrix DTW with a 1-based padded table.
inline double dtw_table(const std::vector<double>& q, const std::vector<double>& r,
                        const std::vector<double>* weights = nullptr,
                        std::optional<std::size_t> band = std::nullopt, bool squared = false) {
  const double inf = std::numeric_limits<double>::infinity();
  const std::size_t n = q.size(), m = r.size();
  std::vector<std::vector<double>> t(n + 1, std::vector<double>(m + 1, inf));
  t[0][0] = 0.0;
  for (std::size_t i = 1; i <= n; ++i) {
    for (std::size_t j = 1; j <= m; ++j) {
      if (band && (i > j ? i - j : j - i) > *band) continue;
      const double c = local_cost(q[i - 1], r[j - 1], weights ? (*weights)[i - 1] : 1.0, squared);
      t[i][j] = c + std::min({t[i - 1][j], t[i][j - 1], t[i - 1][j - 1]});
    }
  }
  return t[n][m];
}

inline double dtw_table(const rmstream::DayPattern& a, const rmstream::DayPattern& b,
                        const rmstream::DistanceConfig& cfg) {
  return dtw_table(a.values, b.values, cfg.weights ? &*cfg.weights : nullptr, cfg.band_radius,
                   cfg.cost == rmstream::CostKind::Squared);
}

struct Recount {
  std::vector<std::size_t> counts;
  std::vector<double> means;  // normalised
  double d_max = 0.0;
};

/// Counts and normalised means recomputed straight from the definition.
inline Recount batch_recount(const std::vector<rmstream::DayPattern>& days, double threshold,
                             const rmstream::DistanceConfig& cfg,
                             std::optional<double> d_max = std::nullopt) {
  const std::size_t n = days.size();
  std::vector<std::vector<double>> d(n, std::vector<double>(n, 0.0));
  double biggest = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      d[i][j] = dtw_table(days[i], days[j], cfg);
      biggest = std::max(biggest, d[i][j]);
    }
  }
  Recount out;
  out.d_max = d_max.value_or(biggest);
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t c = 0;
    double sum = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      c += d[i][j] <= threshold ? 1 : 0;
      sum += d[i][j];
    }
    out.counts.push_back(c);
    out.means.push_back(out.d_max > 0.0 && n > 1 ? sum / (static_cast<double>(n - 1) * out.d_max)
                                                 : 0.0);
  }
  return out;
}

/// Independent argmax of count - mean, lowest index on ties.
inline std::size_t argmax(const Recount& rc) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < rc.counts.size(); ++i) {
    const double a = static_cast<double>(rc.counts[i]) - rc.means[i];
    const double b = static_cast<double>(rc.counts[best]) - rc.means[best];
    if (a > b) best = i;
  }
  return best;
}

inline bool close(double a, double b, double rel = 1e-9) {
  return std::fabs(a - b) <= rel * std::max({1.0, std::fabs(a), std::fabs(b)});
}

/// Random days of length m with values in [0, scale).
inline std::vector<rmstream::DayPattern> random_days(std::mt19937_64& rng, std::size_t n,
                                                     std::size_t m, double scale = 2.0) {
  std::uniform_real_distribution<double> u(0.0, scale);
  std::vector<rmstream::DayPattern> days(n);
  for (std::size_t i = 0; i < n; ++i) {
    days[i].day_index = i;
    days[i].values.resize(m);
    for (auto& v : days[i].values) v = u(rng);
  }
  return days;
}

}  // namespace oracle
