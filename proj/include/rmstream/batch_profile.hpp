#pragma once

// Brute-force similarity profile: every pair of days is compared once.
// This is the reference every incremental updater is checked against.

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "rmstream/core_model.hpp"
#include "rmstream/distance.hpp"

namespace rmstream {

struct BatchProfile {
  std::vector<DayPattern> tsd;
  std::vector<SimilarityRecord> records;
  double d_max = 0.0;
  double threshold = 0.0;
};

/// counts[i] = |{j != i : d(i, j) <= threshold}|,
/// norm_mean_dist[i] = sum_{j != i} d(i, j) / ((N - 1) * d_max), 0 when d_max == 0.
///
/// `d_max_override` replaces the matrix maximum as the normaliser; it exists
/// for the fixed-memory window check, where the running maximum can exceed
/// anything still stored. It must be >= the matrix maximum.
BatchProfile compute_similarity_profile(std::span<const DayPattern> tsd, double threshold,
                                        const DistanceConfig& cfg,
                                        std::optional<double> d_max_override = std::nullopt);

/// Same as above over a precomputed distance matrix.
BatchProfile profile_from_matrix(std::span<const DayPattern> tsd, const DistanceMatrix& d,
                                 double threshold,
                                 std::optional<double> d_max_override = std::nullopt);

/// Nearest-rank quantile: the ceil(q * n)-th smallest value (1-based), q in (0, 1).
double nearest_rank_quantile(std::vector<double> values, double q);

/// Quantile of the off-diagonal pairwise distances. Unordered pairs are used
/// when the distance is symmetric, ordered pairs otherwise.
double default_threshold(std::span<const DayPattern> tsd, const DistanceConfig& cfg,
                         double quantile = 0.3);

/// Index of the largest derived profile value, lowest index on ties.
std::size_t argmax_sp(std::span<const SimilarityRecord> records);

RefinedMotif extract_rm(std::span<const SimilarityRecord> records,
                        std::span<const DayPattern> patterns);

inline RefinedMotif extract_rm(const BatchProfile& profile) {
  return extract_rm(profile.records, profile.tsd);
}

}  // namespace rmstream
