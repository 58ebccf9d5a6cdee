#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "tass/partition.hpp"
#include "tass/prefix.hpp"

namespace tass {

/// Line accounting for a tolerant loader. Every input line is exactly one
/// of accepted, rejected or skipped (comment/blank).
struct LoadReport {
  std::uint64_t total_lines = 0;
  std::uint64_t accepted = 0;
  std::uint64_t rejected = 0;
  std::uint64_t skipped = 0;
  /// Accepted lines that repeated an earlier key (prefix or address).
  std::uint64_t duplicates = 0;
  /// 1-based numbers of the first few rejected lines.
  std::vector<std::uint64_t> rejected_lines;

  static constexpr std::size_t max_recorded_rejects = 16;
};

/// One full-scan result: the responsive addresses for a protocol at a time.
struct ScanSnapshot {
  std::string protocol;
  /// ISO-8601 date label; compared lexically, never parsed.
  std::string captured_at;
  std::string source_id;
  /// Sorted, no duplicates.
  std::vector<Ipv4Address> addresses;

  [[nodiscard]] std::size_t size() const noexcept { return addresses.size(); }
  /// An empty snapshot loads fine but cannot seed a selection.
  [[nodiscard]] bool usable_as_seed() const noexcept { return !addresses.empty(); }

  /// Sorts and deduplicates `addresses`; returns the number of duplicates.
  std::size_t normalize();
};

struct Pfx2asLoad {
  AnnouncedPrefixTable table;
  LoadReport report;
};

/// Reads `<address>\t<length>\t<as-field>` records. The AS field is split on
/// '_' (multi-origin) and ',' (AS set). Malformed lines are counted and
/// skipped; a stream failure throws IoError.
Pfx2asLoad load_pfx2as(std::istream& in);

/// Writes a table in the format accepted by load_pfx2as. Origins are joined
/// with '_'.
void write_pfx2as(const AnnouncedPrefixTable& table, std::ostream& out);

struct SnapshotLoad {
  ScanSnapshot snapshot;
  LoadReport report;
  /// `# key: value` comment lines found in the input, e.g. protocol or
  /// captured_at. Informational only; the loader never applies them.
  std::map<std::string, std::string> header;
};

/// Reads one dotted-quad per line. `#` comments and blank lines are skipped;
/// malformed lines are counted and skipped; a stream failure throws IoError.
SnapshotLoad load_snapshot(std::istream& in, std::string protocol, std::string captured_at,
                           std::string source_id = {});

/// CIDR lines as produced by write_prefix_list. Unlike the feed loaders this
/// is strict: any malformed line throws ParseError naming the line.
std::vector<Ipv4Prefix> load_prefix_list(std::istream& in);

/// One `a.b.c.d/len` per line in the given order.
void write_prefix_list(std::span<const Ipv4Prefix> prefixes, std::ostream& out);

/// load_prefix_list plus partition validation (disjointness).
RoutedPartition load_partition(std::istream& in, PartitionMode mode);

} // namespace tass
