#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "tass/ingest.hpp"
#include "tass/partition.hpp"
#include "tass/ratio.hpp"

namespace tass {

/// Responsive-host counts per partition prefix for one snapshot.
struct HostCounts {
  /// Only prefixes with at least one host.
  std::map<Ipv4Prefix, std::uint64_t> per_prefix;
  /// Snapshot addresses outside every partition prefix.
  std::uint64_t unrouted = 0;

  [[nodiscard]] std::uint64_t routed() const noexcept;
};

/// Attributes every snapshot address to its partition prefix. Work is split
/// over `threads` workers (0 = default_thread_count()); the result does not
/// depend on the worker count.
HostCounts count_hosts(const RoutedPartition& partition, const ScanSnapshot& snapshot,
                       unsigned threads = 0);

/// One responsive prefix with its host count c and the seed total N.
struct PrefixDensityRecord {
  Ipv4Prefix prefix;
  std::uint64_t host_count = 0;
  std::uint64_t total_hosts = 0;

  /// c / 2^(32 - length), exact.
  [[nodiscard]] Ratio density() const noexcept { return {host_count, prefix.size()}; }
  /// c / N, exact.
  [[nodiscard]] Ratio coverage_share() const noexcept { return {host_count, total_hosts}; }

  /// density * 2^32 as an integer. Exact because c <= 2^(32 - length).
  [[nodiscard]] std::uint64_t density_key() const noexcept {
    return host_count << prefix.length();
  }

  friend bool operator==(const PrefixDensityRecord&, const PrefixDensityRecord&) = default;
};

struct DensityTable {
  std::vector<PrefixDensityRecord> records;
  /// Set when N == 0: nothing to rank, the seed is unusable.
  bool empty_seed = false;
};

/// One record per prefix with a nonzero count. Throws InvalidInput if N does
/// not equal the sum of the counts or a count exceeds its prefix size.
DensityTable compute_densities(const std::map<Ipv4Prefix, std::uint64_t>& counts,
                               std::uint64_t total_hosts);

/// Strict weak order used for ranking: density descending, then host count
/// descending, then (network, length) ascending.
bool ranks_before(const PrefixDensityRecord& a, const PrefixDensityRecord& b) noexcept;

std::vector<PrefixDensityRecord> rank_by_density(std::vector<PrefixDensityRecord> records);

struct SelectionResult {
  Ratio phi_target;
  std::vector<PrefixDensityRecord> ranked;
  /// Number of leading ranked prefixes selected.
  std::size_t k = 0;
  /// ranked[0..k) in rank order.
  std::vector<Ipv4Prefix> selected_prefixes;

  std::uint64_t total_hosts = 0;
  std::uint64_t selected_hosts = 0;
  std::uint64_t selected_addresses = 0;
  std::uint64_t routed_total_addresses = 0;

  std::string seed_snapshot_id;
  PartitionMode partition_mode = PartitionMode::less_specific;
  std::uint64_t partition_digest = 0;

  [[nodiscard]] Ratio cum_host_coverage() const noexcept { return {selected_hosts, total_hosts}; }
  [[nodiscard]] Ratio cum_address_coverage() const noexcept {
    return {selected_addresses, routed_total_addresses};
  }
};

/// Picks the smallest k whose cumulative host share strictly exceeds phi.
/// phi == 1 selects every ranked prefix. The cut is decided in integer
/// arithmetic: sum(c_1..c_k) * phi.den > phi.num * N.
///
/// Throws InvalidInput for phi outside (0, 1], an empty ranking ("no
/// responsive prefixes"), an unsorted ranking, or ranked prefixes that are
/// not part of `partition`.
SelectionResult select_prefixes(const std::vector<PrefixDensityRecord>& ranked, Ratio phi_target,
                                const RoutedPartition& partition,
                                std::string seed_snapshot_id = {});

/// Selected address count over `routed_total`. Throws if routed_total == 0.
Ratio address_space_coverage(const SelectionResult& selection, std::uint64_t routed_total);

struct StatisticsRow {
  std::size_t rank = 0;
  Ipv4Prefix prefix;
  std::uint64_t host_count = 0;
  Ratio density;
  Ratio cum_host_coverage;
  Ratio cum_address_coverage;
};

/// One row per ranked prefix (not just the selected ones), for plotting
/// density and cumulative coverage curves.
std::vector<StatisticsRow> emit_statistics(const SelectionResult& selection);

/// Header `rank,prefix,length,host_count,density,cum_host_coverage,cum_addr_coverage`.
void write_statistics_csv(const std::vector<StatisticsRow>& rows, std::ostream& out);

/// Selected prefixes as CIDR lines sorted by network then length.
void write_target_list(const SelectionResult& selection, std::ostream& out);

/// count_hosts + compute_densities + rank_by_density + select_prefixes.
struct SeedSelection {
  HostCounts counts;
  SelectionResult selection;
};

SeedSelection select_from_snapshot(const RoutedPartition& partition, const ScanSnapshot& seed,
                                   Ratio phi_target, unsigned threads = 0);

} // namespace tass
