#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "rmstream/core_model.hpp"

namespace rmstream {

/// Weighted DTW between two equal-length sequences. The local cost of
/// aligning query[i] with reference[j] is weights[i] * |query[i] - reference[j]|
/// (or the squared difference under CostKind::Squared); the warping path is
/// restricted to |i - j| <= band_radius when a band is configured.
double dtw_distance(std::span<const double> query, std::span<const double> reference,
                    const DistanceConfig& cfg);

double dtw_distance(const DayPattern& a, const DayPattern& b, const DistanceConfig& cfg);

/// Dense N x N matrix, row-major.
class DistanceMatrix {
 public:
  DistanceMatrix() = default;
  explicit DistanceMatrix(std::size_t n) : n_(n), cells_(n * n, 0.0) {}

  std::size_t size() const noexcept { return n_; }
  double operator()(std::size_t i, std::size_t j) const { return cells_[i * n_ + j]; }
  double& operator()(std::size_t i, std::size_t j) { return cells_[i * n_ + j]; }

  double max() const noexcept;

 private:
  std::size_t n_ = 0;
  std::vector<double> cells_;
};

/// Entry (i, j) = dtw_distance(tsd[i], tsd[j]). Needs N >= 2 equal-length days.
DistanceMatrix pairwise_distance_matrix(std::span<const DayPattern> tsd,
                                        const DistanceConfig& cfg);

/// Both directions of one stored/incoming pair. `from_stored` feeds the stored
/// day's profile row, `from_incoming` feeds the incoming day's row. They are
/// the same evaluation when the configuration is symmetric.
struct PairDistance {
  double from_stored = 0.0;
  double from_incoming = 0.0;
};

PairDistance pair_distance(const DayPattern& stored, const DayPattern& incoming,
                           const DistanceConfig& cfg);

}  // namespace rmstream
