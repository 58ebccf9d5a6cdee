#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "tass/prefix.hpp"

namespace tass {

/// Announced prefixes with their origin ASes, as read from a pfx2as feed.
/// Entries are unique per prefix; re-adding a prefix merges origin sets.
/// Entries may nest.
class AnnouncedPrefixTable {
public:
  using Origins = std::set<std::string>;
  using Entries = std::map<Ipv4Prefix, Origins>;

  /// Returns true if the prefix was new, false if it was merged into an
  /// existing entry.
  bool add(const Ipv4Prefix& prefix, Origins origins = {});

  [[nodiscard]] const Entries& entries() const noexcept { return entries_; }
  [[nodiscard]] std::size_t size() const noexcept { return entries_.size(); }
  [[nodiscard]] bool empty() const noexcept { return entries_.empty(); }

  friend bool operator==(const AnnouncedPrefixTable&, const AnnouncedPrefixTable&) = default;

private:
  Entries entries_;
};

/// How nested announcements are folded into a disjoint partition.
enum class PartitionMode {
  /// Keep only maximal announced prefixes (l-prefixes).
  less_specific,
  /// Split every enclosing prefix around the prefixes it contains (m-prefixes).
  more_specific,
};

std::string_view to_string(PartitionMode mode) noexcept;

/// Accepts "less" / "more" (and the long enum spellings).
PartitionMode parse_partition_mode(std::string_view text);

/// A set of pairwise disjoint prefixes covering the announced space.
/// Immutable once built; lookups are safe from concurrent readers.
class RoutedPartition {
public:
  RoutedPartition() = default;

  /// Validates disjointness; throws InvalidInput on overlap or duplicates.
  RoutedPartition(PartitionMode mode, std::vector<Ipv4Prefix> prefixes);

  [[nodiscard]] PartitionMode mode() const noexcept { return mode_; }

  /// Sorted by network address.
  [[nodiscard]] std::span<const Ipv4Prefix> prefixes() const noexcept { return prefixes_; }
  [[nodiscard]] std::size_t size() const noexcept { return prefixes_.size(); }
  [[nodiscard]] bool empty() const noexcept { return prefixes_.empty(); }

  /// Sum of prefix sizes.
  [[nodiscard]] std::uint64_t total_addresses() const noexcept { return total_addresses_; }

  /// Content fingerprint over mode and prefix list. Two partitions with the
  /// same digest were built from the same topology.
  [[nodiscard]] std::uint64_t digest() const noexcept { return digest_; }

  /// Position of the unique prefix containing `addr`.
  [[nodiscard]] std::optional<std::size_t> index_of(Ipv4Address addr) const noexcept;

  [[nodiscard]] std::optional<std::size_t> index_of(const Ipv4Prefix& prefix) const noexcept;

private:
  PartitionMode mode_ = PartitionMode::less_specific;
  std::vector<Ipv4Prefix> prefixes_;
  std::uint64_t total_addresses_ = 0;
  std::uint64_t digest_ = 0;
};

/// Splits `l_prefix` into the given contained prefixes plus the fewest CIDR
/// blocks covering the remainder. Nested m-prefixes are handled recursively:
/// an m-prefix that itself contains m-prefixes is split in turn, so only the
/// innermost ones appear verbatim. Output is sorted and pairwise disjoint.
///
/// Throws InvalidInput if an m-prefix is not strictly inside `l_prefix` or
/// is listed twice.
std::vector<Ipv4Prefix> deaggregate(const Ipv4Prefix& l_prefix,
                                    std::span<const Ipv4Prefix> m_prefixes);

RoutedPartition build_partition(const AnnouncedPrefixTable& table, PartitionMode mode);

/// The partition prefix containing `addr`, or nullopt outside routed space.
std::optional<Ipv4Prefix> longest_match(const RoutedPartition& partition, Ipv4Address addr);

/// Nesting statistics of an announced table.
struct TableSummary {
  std::size_t prefixes = 0;
  /// Announced prefixes contained in another announced prefix.
  std::size_t m_prefixes = 0;
  /// Addresses covered by the union of all announced prefixes.
  std::uint64_t advertised_addresses = 0;
  /// Addresses covered by the union of the m-prefixes.
  std::uint64_t m_prefix_addresses = 0;
};

TableSummary summarize(const AnnouncedPrefixTable& table);

} // namespace tass
