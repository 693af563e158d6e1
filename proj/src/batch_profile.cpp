#include "rmstream/batch_profile.hpp"

#include <algorithm>
#include <cmath>

#include "rmstream/error.hpp"

namespace rmstream {

BatchProfile compute_similarity_profile(std::span<const DayPattern> tsd, double threshold,
                                        const DistanceConfig& cfg,
                                        std::optional<double> d_max_override) {
  if (tsd.size() < 2) fail(ErrorKind::InvalidInput, "similarity profile needs at least 2 days");
  return profile_from_matrix(tsd, pairwise_distance_matrix(tsd, cfg), threshold, d_max_override);
}

BatchProfile profile_from_matrix(std::span<const DayPattern> tsd, const DistanceMatrix& d,
                                 double threshold, std::optional<double> d_max_override) {
  const std::size_t n = tsd.size();
  if (n < 2) fail(ErrorKind::InvalidInput, "similarity profile needs at least 2 days");
  if (d.size() != n) fail(ErrorKind::InvalidInput, "distance matrix does not match the days");
  if (!std::isfinite(threshold) || threshold < 0.0) {
    fail(ErrorKind::InvalidInput, "threshold must be finite and non-negative");
  }

  BatchProfile out;
  out.tsd.assign(tsd.begin(), tsd.end());
  out.threshold = threshold;
  out.d_max = d.max();
  if (d_max_override) {
    if (*d_max_override < out.d_max) {
      fail(ErrorKind::InvalidInput, "d_max override is below the largest pairwise distance");
    }
    out.d_max = *d_max_override;
  }

  out.records.resize(n);
  const double denom = static_cast<double>(n - 1) * out.d_max;
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t count = 0;
    double sum = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      if (d(i, j) <= threshold) ++count;
      sum += d(i, j);
    }
    out.records[i].count = count;
    out.records[i].norm_mean_dist = out.d_max > 0.0 ? std::clamp(sum / denom, 0.0, 1.0) : 0.0;
  }
  return out;
}

double nearest_rank_quantile(std::vector<double> values, double q) {
  if (values.empty()) fail(ErrorKind::InvalidInput, "quantile of an empty set");
  if (!(q > 0.0 && q < 1.0)) fail(ErrorKind::InvalidInput, "quantile must lie in (0, 1)");
  const auto n = values.size();
  auto rank = static_cast<std::size_t>(std::ceil(q * static_cast<double>(n)));
  rank = std::clamp<std::size_t>(rank, 1, n);
  std::nth_element(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(rank - 1),
                   values.end());
  return values[rank - 1];
}

double default_threshold(std::span<const DayPattern> tsd, const DistanceConfig& cfg,
                         double quantile) {
  if (tsd.size() < 2) fail(ErrorKind::InvalidInput, "default threshold needs at least 2 days");
  const auto d = pairwise_distance_matrix(tsd, cfg);
  std::vector<double> off;
  for (std::size_t i = 0; i < d.size(); ++i) {
    for (std::size_t j = 0; j < d.size(); ++j) {
      if (i == j) continue;
      if (cfg.symmetric() && j < i) continue;
      off.push_back(d(i, j));
    }
  }
  return nearest_rank_quantile(std::move(off), quantile);
}

std::size_t argmax_sp(std::span<const SimilarityRecord> records) {
  if (records.empty()) fail(ErrorKind::InvalidInput, "no similarity records to search");
  std::size_t best = 0;
  for (std::size_t i = 1; i < records.size(); ++i) {
    if (records[i].sp_value() > records[best].sp_value()) best = i;
  }
  return best;
}

RefinedMotif extract_rm(std::span<const SimilarityRecord> records,
                        std::span<const DayPattern> patterns) {
  if (records.size() != patterns.size()) {
    fail(ErrorKind::InvalidInput, "records and patterns differ in length");
  }
  const std::size_t idx = argmax_sp(records);
  return RefinedMotif{patterns[idx], records[idx].sp_value(), idx};
}

}  // namespace rmstream
