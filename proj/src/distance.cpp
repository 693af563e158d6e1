#include "rmstream/distance.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "rmstream/error.hpp"

namespace rmstream {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_finite(std::span<const double> xs) {
  for (double x : xs) {
    if (!std::isfinite(x)) fail(ErrorKind::InvalidInput, "DTW input contains a non-finite value");
  }
}

}  // namespace

double dtw_distance(std::span<const double> query, std::span<const double> reference,
                    const DistanceConfig& cfg) {
  const std::size_t m = query.size();
  if (reference.size() != m) {
    fail(ErrorKind::InvalidInput, "DTW length mismatch: " + std::to_string(m) + " vs " +
                                      std::to_string(reference.size()));
  }
  cfg.validate(m);
  check_finite(query);
  check_finite(reference);

  const std::size_t radius = cfg.band_radius.value_or(m - 1);
  const bool squared = cfg.cost == CostKind::Squared;
  const double* w = cfg.weights ? cfg.weights->data() : nullptr;

  // Two rolling rows over the reference axis.
  std::vector<double> prev(m, kInf);
  std::vector<double> curr(m, kInf);
  for (std::size_t i = 0; i < m; ++i) {
    const std::size_t lo = i > radius ? i - radius : 0;
    const std::size_t hi = std::min(m - 1, i + radius);
    // Cells just outside the band must read as unreachable.
    if (lo > 0) curr[lo - 1] = kInf;
    const double wi = w ? w[i] : 1.0;
    for (std::size_t j = lo; j <= hi; ++j) {
      const double diff = query[i] - reference[j];
      const double cost = wi * (squared ? diff * diff : std::abs(diff));
      double best;
      if (i == 0 && j == 0) {
        best = 0.0;
      } else {
        best = kInf;
        if (i > 0) best = std::min(best, prev[j]);
        if (j > 0) best = std::min(best, curr[j - 1]);
        if (i > 0 && j > 0) best = std::min(best, prev[j - 1]);
      }
      curr[j] = best + cost;
    }
    if (hi + 1 < m) curr[hi + 1] = kInf;
    std::swap(prev, curr);
  }
  return prev[m - 1];
}

double dtw_distance(const DayPattern& a, const DayPattern& b, const DistanceConfig& cfg) {
  return dtw_distance(std::span<const double>(a.values), std::span<const double>(b.values), cfg);
}

double DistanceMatrix::max() const noexcept {
  double best = 0.0;
  for (double v : cells_) best = std::max(best, v);
  return best;
}

DistanceMatrix pairwise_distance_matrix(std::span<const DayPattern> tsd,
                                        const DistanceConfig& cfg) {
  const std::size_t n = tsd.size();
  if (n < 2) fail(ErrorKind::InvalidInput, "pairwise distances need at least 2 days");
  const std::size_t m = tsd.front().length();
  for (const auto& day : tsd) validate_pattern(day, m);
  cfg.validate(m);

  DistanceMatrix d(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      d(i, j) = dtw_distance(tsd[i], tsd[j], cfg);
      d(j, i) = cfg.symmetric() ? d(i, j) : dtw_distance(tsd[j], tsd[i], cfg);
    }
  }
  return d;
}

PairDistance pair_distance(const DayPattern& stored, const DayPattern& incoming,
                           const DistanceConfig& cfg) {
  const double forward = dtw_distance(stored, incoming, cfg);
  if (cfg.symmetric()) return {forward, forward};
  return {forward, dtw_distance(incoming, stored, cfg)};
}

}  // namespace rmstream
