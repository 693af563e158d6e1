#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "rmstream/batch_profile.hpp"
#include "rmstream/core_model.hpp"

namespace rmstream {

enum class CodebookVariant {
  WithCR,              // codewords + per-day index into them, records in arrival order
  PatternsDictionary,  // codewords + occurrence counts, records grouped per codeword
};

const char* to_string(CodebookVariant v) noexcept;

/// Compressed profile state. An incoming day within d_rep of its nearest
/// codeword is represented by that codeword from then on; otherwise it becomes
/// a new codeword. Codewords are never modified after insertion.
///
/// Records hold the profile of every day ever seen. Distances for stored days
/// are evaluated against their codeword, one evaluation per codeword.
class CodebookState {
 public:
  struct Fields {
    CodebookVariant variant = CodebookVariant::WithCR;
    std::vector<DayPattern> codewords;
    std::vector<std::size_t> cr;           // WithCR only: codeword of each day (0-based)
    std::vector<std::size_t> occurrences;  // PatternsDictionary only: days per codeword
    std::vector<SimilarityRecord> records;
    double d_max = 0.0;
    double threshold = 0.0;
    double d_rep = 0.0;
    DistanceConfig config;
  };

  static CodebookState from_day(DayPattern first, CodebookVariant variant,
                                const ProfileParams& params, DistanceConfig cfg);
  /// Seeds with the first day and streams the rest through update().
  static CodebookState from_days(std::span<const DayPattern> days, CodebookVariant variant,
                                 const ProfileParams& params, DistanceConfig cfg);
  static CodebookState from_fields(Fields fields);

  void update(const DayPattern& day);

  const Fields& fields() const noexcept { return f_; }
  CodebookVariant variant() const noexcept { return f_.variant; }
  std::size_t codeword_count() const noexcept { return f_.codewords.size(); }
  std::size_t day_count() const noexcept { return f_.records.size(); }
  std::size_t pattern_length() const noexcept { return f_.codewords.front().length(); }
  const std::vector<DayPattern>& codewords() const noexcept { return f_.codewords; }
  const std::vector<std::size_t>& cr() const noexcept { return f_.cr; }
  const std::vector<std::size_t>& occurrences() const noexcept { return f_.occurrences; }
  const std::vector<SimilarityRecord>& records() const noexcept { return f_.records; }
  double d_max() const noexcept { return f_.d_max; }
  double threshold() const noexcept { return f_.threshold; }
  double d_rep() const noexcept { return f_.d_rep; }
  const DistanceConfig& config() const noexcept { return f_.config; }

  /// Codeword that represents record position `i`.
  std::size_t codeword_of_record(std::size_t i) const;

  /// Pattern is the codeword of the argmax record.
  RefinedMotif refined_motif() const;

  /// WithCR: W*m samples + N indices. PatternsDictionary: W*m samples + W counts.
  /// Both add 2N record scalars and d_max.
  MemoryFootprint footprint() const;

  friend bool operator==(const CodebookState& a, const CodebookState& b);

 private:
  explicit CodebookState(Fields f) : f_(std::move(f)) {}
  void update_with_cr(const DayPattern& day);
  void update_dictionary(const DayPattern& day);

  Fields f_;
};

[[nodiscard]] CodebookState codebook_update(CodebookState state, const DayPattern& day);

/// Day i of the result is codewords[cr[i]], re-indexed as day i.
/// Throws CorruptState on an out-of-range index.
std::vector<DayPattern> recover_tsd(std::span<const DayPattern> codewords,
                                    std::span<const std::size_t> cr);

/// 1 - (stored pattern samples + index units) / (baseline_days * m).
/// Baseline is the additive method holding every day verbatim.
double memory_saving(const CodebookState& state, std::size_t baseline_days);

}  // namespace rmstream
