#pragma once

// Versioned JSON snapshots of updater states and classifier models.
//
// Layout:
//   {
//     "format":   "rmstate",
//     "version":  1,
//     "kind":     "additive" | "fixed" | "codebook-cr" | "codebook-pd" | "classifier",
//     "payload":  { ... },
//     "checksum": "crc32:<8 hex digits of the compact payload dump>"
//   }
// Doubles are written in shortest round-trip form, so a load reproduces every
// stored value bit for bit.

#include <filesystem>
#include <string>
#include <string_view>
#include <variant>

#include "rmstream/classifier.hpp"
#include "rmstream/updater.hpp"

namespace rmstream {

inline constexpr int kSnapshotVersion = 1;

using Snapshot = std::variant<AdditiveState, FixedMemoryState, CodebookState, ClassifierModel>;

std::string serialize_snapshot(const Snapshot& snapshot);

/// Throws UnsupportedVersion for any version other than kSnapshotVersion and
/// CorruptState for malformed text, checksum mismatch or inconsistent fields.
Snapshot parse_snapshot(std::string_view text);

/// Writes to a sibling temporary file and renames it over `path`.
void snapshot_save(const Snapshot& snapshot, const std::filesystem::path& path);
Snapshot snapshot_load(const std::filesystem::path& path);

Snapshot to_snapshot(UpdaterState state);
/// Throws InvalidInput when the snapshot holds a classifier.
UpdaterState to_updater(Snapshot snapshot);

}  // namespace rmstream
