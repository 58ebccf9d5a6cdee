#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tass/ingest.hpp"
#include "tass/partition.hpp"
#include "tass/ratio.hpp"
#include "tass/selector.hpp"

namespace tass {

enum class Strategy { hitlist, tass };

std::string_view to_string(Strategy s) noexcept;

struct HitratePoint {
  std::string snapshot_id;
  std::string snapshot_time;
  std::uint64_t ground_truth_hosts = 0;
  std::uint64_t covered_hosts = 0;

  /// covered / ground truth; empty when the later snapshot had no hosts.
  [[nodiscard]] std::optional<Ratio> hitrate() const noexcept {
    if (ground_truth_hosts == 0)
      return std::nullopt;
    return Ratio{covered_hosts, ground_truth_hosts};
  }
};

struct HitrateSeries {
  Strategy strategy = Strategy::hitlist;
  /// TASS only.
  std::optional<Ratio> phi_target;
  std::optional<PartitionMode> partition_mode;
  /// Ascending by snapshot_time.
  std::vector<HitratePoint> points;
};

/// Identifier used in series output: source_id, else captured_at.
std::string snapshot_label(const ScanSnapshot& s);

/// Rescans exactly the seed's responsive addresses. Throws InvalidInput if
/// `later` is empty or protocols differ.
HitrateSeries simulate_hitlist(const ScanSnapshot& seed, std::span<const ScanSnapshot> later);

/// Rescans the prefixes chosen at seed time; the selection is never
/// refreshed. Throws InvalidInput if `selection` was not built from
/// `partition`, `later` is empty, or protocols differ.
HitrateSeries simulate_tass(const SelectionResult& selection, const RoutedPartition& partition,
                            std::span<const ScanSnapshot> later);

/// Host counts by the length of each host's partition prefix.
struct PrefixLengthHistogram {
  static constexpr int last_exact_length = 24;

  std::string snapshot_id;
  /// Index = prefix length 0..24.
  std::array<std::uint64_t, last_exact_length + 1> by_length{};
  /// Hosts in prefixes longer than /24.
  std::uint64_t longer = 0;
  std::uint64_t unrouted = 0;

  [[nodiscard]] std::uint64_t total() const noexcept;
};

PrefixLengthHistogram prefix_length_histogram(const RoutedPartition& partition,
                                              const ScanSnapshot& snapshot);

struct SeriesDelta {
  std::string snapshot_id;
  std::string snapshot_time;
  std::optional<double> hitrate_a;
  std::optional<double> hitrate_b;
  /// a - b; empty when either side is undefined.
  std::optional<double> delta;
};

/// Per-snapshot a - b. Throws InvalidInput unless both series cover the same
/// snapshot ids in the same order.
std::vector<SeriesDelta> compare_series(const HitrateSeries& a, const HitrateSeries& b);

/// Header `snapshot_id,snapshot_time,strategy,phi,ground_truth,covered,hitrate`.
/// Undefined hitrates print as `nan`. `header` = false appends rows only.
void write_series_csv(const HitrateSeries& series, std::ostream& out, bool header = true);

/// Header `length,host_count`, then 0..24, `ge25` and `unrouted` rows.
void write_histogram_csv(const PrefixLengthHistogram& histogram, std::ostream& out);

/// Header `snapshot_id,snapshot_time,hitrate_a,hitrate_b,delta`.
void write_delta_csv(const std::vector<SeriesDelta>& deltas, std::ostream& out);

} // namespace tass
