#include "rmstream/codebook_updater.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>

#include "record_math.hpp"
#include "rmstream/distance.hpp"
#include "rmstream/error.hpp"

namespace rmstream {
namespace {

struct CodewordDistances {
  std::vector<PairDistance> dist;
  double new_d_max = 0.0;
  std::optional<std::size_t> replacement;
};

CodewordDistances measure(const std::vector<DayPattern>& codewords, const DayPattern& day,
                          double d_max, double d_rep, const DistanceConfig& cfg) {
  CodewordDistances out;
  out.dist.resize(codewords.size());
  out.new_d_max = d_max;
  double best = 0.0;
  for (std::size_t k = 0; k < codewords.size(); ++k) {
    const auto pd = pair_distance(codewords[k], day, cfg);
    out.dist[k] = pd;
    out.new_d_max = std::max({out.new_d_max, pd.from_stored, pd.from_incoming});
    // Nearest codeword within d_rep, lowest index on ties.
    if (pd.from_incoming <= d_rep && (!out.replacement || pd.from_incoming < best)) {
      out.replacement = k;
      best = pd.from_incoming;
    }
  }
  return out;
}

}  // namespace

const char* to_string(CodebookVariant v) noexcept {
  return v == CodebookVariant::WithCR ? "codebook-cr" : "codebook-pd";
}

CodebookState CodebookState::from_day(DayPattern first, CodebookVariant variant,
                                      const ProfileParams& params, DistanceConfig cfg) {
  params.validate();
  validate_pattern(first);
  cfg.validate(first.length());
  Fields f;
  f.variant = variant;
  f.codewords.push_back(std::move(first));
  if (variant == CodebookVariant::WithCR) {
    f.cr.push_back(0);
  } else {
    f.occurrences.push_back(1);
  }
  f.records.push_back({});
  f.threshold = params.threshold;
  f.d_rep = params.d_rep;
  f.config = std::move(cfg);
  return CodebookState(std::move(f));
}

CodebookState CodebookState::from_days(std::span<const DayPattern> days, CodebookVariant variant,
                                       const ProfileParams& params, DistanceConfig cfg) {
  if (days.empty()) fail(ErrorKind::InvalidInput, "no days to initialise from");
  auto state = from_day(days.front(), variant, params, std::move(cfg));
  for (const auto& day : days.subspan(1)) state.update(day);
  return state;
}

CodebookState CodebookState::from_fields(Fields f) {
  if (f.codewords.empty() || f.records.empty()) {
    fail(ErrorKind::CorruptState, "codebook state: empty codebook");
  }
  const std::size_t m = f.codewords.front().length();
  for (const auto& cw : f.codewords) {
    if (cw.length() != m) fail(ErrorKind::CorruptState, "codebook state: mixed pattern lengths");
  }
  const std::size_t w = f.codewords.size();
  if (f.variant == CodebookVariant::WithCR) {
    if (!f.occurrences.empty() || f.cr.size() != f.records.size()) {
      fail(ErrorKind::CorruptState, "codebook state: compressed representation does not match records");
    }
    for (auto k : f.cr) {
      if (k >= w) fail(ErrorKind::CorruptState, "codebook state: codeword index out of range");
    }
  } else {
    if (!f.cr.empty() || f.occurrences.size() != w) {
      fail(ErrorKind::CorruptState, "codebook state: occurrences do not match codewords");
    }
    if (std::any_of(f.occurrences.begin(), f.occurrences.end(), [](auto n) { return n == 0; }) ||
        std::accumulate(f.occurrences.begin(), f.occurrences.end(), std::size_t{0}) !=
            f.records.size()) {
      fail(ErrorKind::CorruptState, "codebook state: occurrences do not sum to the record count");
    }
  }
  for (const auto& r : f.records) {
    if (r.count >= f.records.size() || !(r.norm_mean_dist >= 0.0 && r.norm_mean_dist <= 1.0)) {
      fail(ErrorKind::CorruptState, "codebook state: record out of range");
    }
  }
  if (!(f.d_max >= 0.0) || !std::isfinite(f.d_max) || !(f.threshold >= 0.0) || !(f.d_rep >= 0.0)) {
    fail(ErrorKind::CorruptState, "codebook state: bad scalar parameters");
  }
  return CodebookState(std::move(f));
}

void CodebookState::update(const DayPattern& day) {
  validate_pattern(day, pattern_length());
  if (f_.variant == CodebookVariant::WithCR) {
    update_with_cr(day);
  } else {
    update_dictionary(day);
  }
}

void CodebookState::update_with_cr(const DayPattern& day) {
  const std::size_t n = f_.cr.size();
  const auto m = measure(f_.codewords, day, f_.d_max, f_.d_rep, f_.config);

  SimilarityRecord incoming;
  double incoming_sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const auto& pd = m.dist[f_.cr[i]];
    auto& rec = f_.records[i];
    if (pd.from_stored <= f_.threshold) ++rec.count;
    if (pd.from_incoming <= f_.threshold) ++incoming.count;
    rec.norm_mean_dist = detail::renormalize(rec.norm_mean_dist, n - 1, f_.d_max,
                                             pd.from_stored, n, m.new_d_max);
    incoming_sum += pd.from_incoming;
  }
  incoming.norm_mean_dist = detail::normalized(incoming_sum, n, m.new_d_max);
  f_.d_max = m.new_d_max;
  f_.records.push_back(incoming);

  if (m.replacement) {
    f_.cr.push_back(*m.replacement);
  } else {
    f_.cr.push_back(f_.codewords.size());
    f_.codewords.push_back(day);
  }
}

void CodebookState::update_dictionary(const DayPattern& day) {
  const std::size_t n = f_.records.size();
  const auto m = measure(f_.codewords, day, f_.d_max, f_.d_rep, f_.config);

  SimilarityRecord incoming;
  double incoming_sum = 0.0;
  std::size_t offset = 0;
  for (std::size_t k = 0; k < f_.codewords.size(); ++k) {
    const auto& pd = m.dist[k];
    const std::size_t occ = f_.occurrences[k];
    const bool stored_similar = pd.from_stored <= f_.threshold;
    for (std::size_t i = offset; i < offset + occ; ++i) {
      auto& rec = f_.records[i];
      if (stored_similar) ++rec.count;
      rec.norm_mean_dist = detail::renormalize(rec.norm_mean_dist, n - 1, f_.d_max,
                                               pd.from_stored, n, m.new_d_max);
    }
    if (pd.from_incoming <= f_.threshold) incoming.count += occ;
    incoming_sum += pd.from_incoming * static_cast<double>(occ);
    offset += occ;
  }
  incoming.norm_mean_dist = detail::normalized(incoming_sum, n, m.new_d_max);
  f_.d_max = m.new_d_max;

  if (m.replacement) {
    const std::size_t p = *m.replacement;
    const auto block_end = std::accumulate(f_.occurrences.begin(),
                                           f_.occurrences.begin() + static_cast<std::ptrdiff_t>(p) + 1,
                                           std::size_t{0});
    f_.records.insert(f_.records.begin() + static_cast<std::ptrdiff_t>(block_end), incoming);
    ++f_.occurrences[p];
  } else {
    f_.codewords.push_back(day);
    f_.occurrences.push_back(1);
    f_.records.push_back(incoming);
  }
}

std::size_t CodebookState::codeword_of_record(std::size_t i) const {
  if (i >= f_.records.size()) fail(ErrorKind::InvalidInput, "record index out of range");
  if (f_.variant == CodebookVariant::WithCR) return f_.cr[i];
  std::size_t end = 0;
  for (std::size_t k = 0; k < f_.occurrences.size(); ++k) {
    end += f_.occurrences[k];
    if (i < end) return k;
  }
  fail(ErrorKind::CorruptState, "codebook state: record outside every codeword block");
}

RefinedMotif CodebookState::refined_motif() const {
  const std::size_t idx = argmax_sp(f_.records);
  return RefinedMotif{f_.codewords[codeword_of_record(idx)], f_.records[idx].sp_value(), idx};
}

MemoryFootprint CodebookState::footprint() const {
  MemoryFootprint fp;
  fp.pattern_units = codeword_count() * pattern_length();
  fp.index_units = f_.variant == CodebookVariant::WithCR ? f_.cr.size() : f_.occurrences.size();
  fp.record_units = 2 * day_count();
  fp.scalar_units = 1;
  return fp;
}

bool operator==(const CodebookState& a, const CodebookState& b) {
  const auto& x = a.f_;
  const auto& y = b.f_;
  return x.variant == y.variant && x.codewords == y.codewords && x.cr == y.cr &&
         x.occurrences == y.occurrences && x.records == y.records && x.d_max == y.d_max &&
         x.threshold == y.threshold && x.d_rep == y.d_rep && x.config == y.config;
}

CodebookState codebook_update(CodebookState state, const DayPattern& day) {
  state.update(day);
  return state;
}

std::vector<DayPattern> recover_tsd(std::span<const DayPattern> codewords,
                                    std::span<const std::size_t> cr) {
  std::vector<DayPattern> out;
  out.reserve(cr.size());
  for (std::size_t i = 0; i < cr.size(); ++i) {
    if (cr[i] >= codewords.size()) {
      fail(ErrorKind::CorruptState, "compressed representation points at codeword " +
                                        std::to_string(cr[i]) + " of " +
                                        std::to_string(codewords.size()));
    }
    out.push_back(DayPattern{i, codewords[cr[i]].values});
  }
  return out;
}

double memory_saving(const CodebookState& state, std::size_t baseline_days) {
  if (baseline_days == 0) fail(ErrorKind::InvalidInput, "memory saving needs a non-empty baseline");
  const auto fp = state.footprint();
  const double baseline = static_cast<double>(baseline_days * state.pattern_length());
  return 1.0 - static_cast<double>(fp.pattern_units + fp.index_units) / baseline;
}

}  // namespace rmstream
