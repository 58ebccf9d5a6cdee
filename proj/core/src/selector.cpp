#include "tass/selector.hpp"

#include <algorithm>
#include <cstdio>
#include <ostream>

#include "tass/error.hpp"
#include "tass/threads.hpp"

namespace tass {

std::uint64_t HostCounts::routed() const noexcept {
  std::uint64_t sum = 0;
  for (const auto& [prefix, count] : per_prefix)
    sum += count;
  return sum;
}

HostCounts count_hosts(const RoutedPartition& partition, const ScanSnapshot& snapshot,
                       unsigned threads) {
  if (threads == 0)
    threads = default_thread_count();
  const auto& addrs = snapshot.addresses;
  // Tiny inputs are not worth a thread each.
  threads = std::min<unsigned>(threads, static_cast<unsigned>(addrs.size() / 65536 + 1));

  std::vector<std::vector<std::uint64_t>> local(threads);
  std::vector<std::uint64_t> unrouted(threads, 0);
  parallel_slices(addrs.size(), threads, [&](unsigned w, std::size_t begin, std::size_t end) {
    auto& counts = local[w];
    counts.assign(partition.size(), 0);
    for (std::size_t i = begin; i < end; ++i) {
      if (auto idx = partition.index_of(addrs[i]))
        ++counts[*idx];
      else
        ++unrouted[w];
    }
  });

  HostCounts result;
  const auto prefixes = partition.prefixes();
  for (std::size_t i = 0; i < prefixes.size(); ++i) {
    std::uint64_t c = 0;
    for (const auto& counts : local)
      c += counts.empty() ? 0 : counts[i];
    if (c > 0)
      result.per_prefix.emplace_hint(result.per_prefix.end(), prefixes[i], c);
  }
  for (auto u : unrouted)
    result.unrouted += u;
  return result;
}

DensityTable compute_densities(const std::map<Ipv4Prefix, std::uint64_t>& counts,
                               std::uint64_t total_hosts) {
  DensityTable table;
  std::uint64_t sum = 0;
  for (const auto& [prefix, count] : counts) {
    if (count > prefix.size())
      throw InvalidInput("host count " + std::to_string(count) + " exceeds size of " +
                         prefix.to_string());
    sum += count;
    if (count > 0)
      table.records.push_back({prefix, count, total_hosts});
  }
  if (sum != total_hosts)
    throw InvalidInput("total hosts " + std::to_string(total_hosts) +
                       " differs from the sum of prefix counts " + std::to_string(sum));
  table.empty_seed = total_hosts == 0;
  return table;
}

bool ranks_before(const PrefixDensityRecord& a, const PrefixDensityRecord& b) noexcept {
  if (a.density_key() != b.density_key())
    return a.density_key() > b.density_key();
  if (a.host_count != b.host_count)
    return a.host_count > b.host_count;
  return a.prefix < b.prefix;
}

std::vector<PrefixDensityRecord> rank_by_density(std::vector<PrefixDensityRecord> records) {
  std::sort(records.begin(), records.end(), ranks_before);
  return records;
}

SelectionResult select_prefixes(const std::vector<PrefixDensityRecord>& ranked, Ratio phi_target,
                                const RoutedPartition& partition, std::string seed_snapshot_id) {
  if (phi_target.den == 0 || phi_target.num == 0 || phi_target.num > phi_target.den)
    throw InvalidInput("phi must lie in (0, 1]");
  if (ranked.empty())
    throw InvalidInput("no responsive prefixes");

  SelectionResult sel;
  sel.phi_target = phi_target;
  sel.ranked = ranked;
  sel.total_hosts = ranked.front().total_hosts;
  sel.routed_total_addresses = partition.total_addresses();
  sel.seed_snapshot_id = std::move(seed_snapshot_id);
  sel.partition_mode = partition.mode();
  sel.partition_digest = partition.digest();

  std::uint64_t sum = 0;
  for (std::size_t i = 0; i < ranked.size(); ++i) {
    const auto& r = ranked[i];
    if (r.host_count == 0 || r.total_hosts != sel.total_hosts)
      throw InvalidInput("ranking contains a zero-count record or mixes seed totals");
    if (i > 0 && ranks_before(r, ranked[i - 1]))
      throw InvalidInput("records are not in density order");
    if (!partition.index_of(r.prefix))
      throw InvalidInput(r.prefix.to_string() + " is not part of the partition");
    sum += r.host_count;
  }
  if (sum != sel.total_hosts)
    throw InvalidInput("ranked host counts do not add up to the seed total");

  using u128 = detail::uint128;
  const bool full = phi_target.num == phi_target.den;
  const u128 threshold = u128{phi_target.num} * sel.total_hosts;
  std::uint64_t hosts = 0;
  std::size_t k = 0;
  while (k < ranked.size()) {
    hosts += ranked[k].host_count;
    sel.selected_addresses += ranked[k].prefix.size();
    sel.selected_prefixes.push_back(ranked[k].prefix);
    ++k;
    if (!full && u128{hosts} * phi_target.den > threshold)
      break;
  }
  sel.k = k;
  sel.selected_hosts = hosts;
  return sel;
}

Ratio address_space_coverage(const SelectionResult& selection, std::uint64_t routed_total) {
  if (routed_total == 0)
    throw InvalidInput("routed address total must be positive");
  return {selection.selected_addresses, routed_total};
}

std::vector<StatisticsRow> emit_statistics(const SelectionResult& selection) {
  std::vector<StatisticsRow> rows;
  rows.reserve(selection.ranked.size());
  std::uint64_t hosts = 0;
  std::uint64_t addrs = 0;
  for (std::size_t i = 0; i < selection.ranked.size(); ++i) {
    const auto& r = selection.ranked[i];
    hosts += r.host_count;
    addrs += r.prefix.size();
    rows.push_back({i + 1, r.prefix, r.host_count, r.density(), {hosts, selection.total_hosts},
                    {addrs, selection.routed_total_addresses}});
  }
  return rows;
}

void write_statistics_csv(const std::vector<StatisticsRow>& rows, std::ostream& out) {
  out << "rank,prefix,length,host_count,density,cum_host_coverage,cum_addr_coverage\n";
  char density[32];
  for (const auto& row : rows) {
    std::snprintf(density, sizeof density, "%.6g", row.density.value());
    out << row.rank << ',' << format_address(row.prefix.network()) << ',' << row.prefix.length()
        << ',' << row.host_count << ',' << density << ','
        << format_fixed(row.cum_host_coverage, 6) << ','
        << format_fixed(row.cum_address_coverage, 6) << '\n';
  }
  if (!out)
    throw IoError("write error on statistics output");
}

void write_target_list(const SelectionResult& selection, std::ostream& out) {
  auto sorted = selection.selected_prefixes;
  std::sort(sorted.begin(), sorted.end());
  for (const auto& p : sorted)
    out << p.to_string() << '\n';
  if (!out)
    throw IoError("write error on target list output");
}

SeedSelection select_from_snapshot(const RoutedPartition& partition, const ScanSnapshot& seed,
                                   Ratio phi_target, unsigned threads) {
  SeedSelection result;
  result.counts = count_hosts(partition, seed, threads);
  auto densities = compute_densities(result.counts.per_prefix, result.counts.routed());
  if (densities.empty_seed)
    throw InvalidInput("seed snapshot has no routed hosts");
  auto id = seed.source_id.empty() ? seed.captured_at : seed.source_id;
  result.selection =
      select_prefixes(rank_by_density(std::move(densities.records)), phi_target, partition, id);
  return result;
}

} // namespace tass
