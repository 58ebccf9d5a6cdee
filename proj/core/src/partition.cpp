#include "tass/partition.hpp"

#include <algorithm>

#include "tass/error.hpp"

namespace tass {

namespace {

// Emits the minimal disjoint cover of `block` in which every prefix of
// `inner` that contains no other prefix of `inner` appears verbatim.
// `inner` is sorted and every element lies inside `block`.
void split_around(const Ipv4Prefix& block, std::span<const Ipv4Prefix> inner,
                  std::vector<Ipv4Prefix>& out) {
  while (!inner.empty() && inner.front() == block)
    inner = inner.subspan(1);
  if (inner.empty()) {
    out.push_back(block);
    return;
  }
  const auto lo = block.lower_half();
  const auto hi = block.upper_half();
  const auto mid = std::partition_point(inner.begin(), inner.end(), [&](const Ipv4Prefix& p) {
    return p.network() < hi.network();
  });
  const auto split = static_cast<std::size_t>(mid - inner.begin());
  split_around(lo, inner.first(split), out);
  split_around(hi, inner.subspan(split), out);
}

// Groups the sorted announced prefixes under their maximal enclosing prefix.
// Relies on (network, length) order: an enclosing prefix precedes everything
// it contains.
template <class Fn>
void for_each_group(const AnnouncedPrefixTable& table, Fn&& fn) {
  std::vector<Ipv4Prefix> nested;
  std::optional<Ipv4Prefix> top;
  for (const auto& [prefix, origins] : table.entries()) {
    if (top && top->contains(prefix)) {
      nested.push_back(prefix);
      continue;
    }
    if (top)
      fn(*top, std::span<const Ipv4Prefix>(nested));
    top = prefix;
    nested.clear();
  }
  if (top)
    fn(*top, std::span<const Ipv4Prefix>(nested));
}

std::uint64_t fnv1a(std::uint64_t hash, std::uint64_t value) noexcept {
  for (int i = 0; i < 8; ++i) {
    hash ^= (value >> (8 * i)) & 0xffu;
    hash *= 0x100000001b3ull;
  }
  return hash;
}

} // namespace

bool AnnouncedPrefixTable::add(const Ipv4Prefix& prefix, Origins origins) {
  auto [it, inserted] = entries_.try_emplace(prefix);
  it->second.merge(origins);
  return inserted;
}

std::string_view to_string(PartitionMode mode) noexcept {
  return mode == PartitionMode::less_specific ? "less" : "more";
}

PartitionMode parse_partition_mode(std::string_view text) {
  if (text == "less" || text == "less_specific" || text == "LESS_SPECIFIC")
    return PartitionMode::less_specific;
  if (text == "more" || text == "more_specific" || text == "MORE_SPECIFIC")
    return PartitionMode::more_specific;
  throw ParseError("unknown partition mode '" + std::string(text) + "' (expected less|more)");
}

RoutedPartition::RoutedPartition(PartitionMode mode, std::vector<Ipv4Prefix> prefixes)
    : mode_(mode), prefixes_(std::move(prefixes)) {
  std::sort(prefixes_.begin(), prefixes_.end());
  std::uint64_t hash = 0xcbf29ce484222325ull;
  hash = fnv1a(hash, static_cast<std::uint64_t>(mode_));
  for (std::size_t i = 0; i < prefixes_.size(); ++i) {
    const auto& p = prefixes_[i];
    if (i > 0 && prefixes_[i - 1].last() >= p.network())
      throw InvalidInput("partition prefixes overlap: " + prefixes_[i - 1].to_string() + " and " +
                         p.to_string());
    total_addresses_ += p.size();
    hash = fnv1a(hash, (std::uint64_t{p.network()} << 8) | static_cast<std::uint64_t>(p.length()));
  }
  digest_ = hash;
}

std::optional<std::size_t> RoutedPartition::index_of(Ipv4Address addr) const noexcept {
  auto it = std::upper_bound(prefixes_.begin(), prefixes_.end(), addr,
                             [](Ipv4Address a, const Ipv4Prefix& p) { return a < p.network(); });
  if (it == prefixes_.begin())
    return std::nullopt;
  --it;
  if (!it->contains(addr))
    return std::nullopt;
  return static_cast<std::size_t>(it - prefixes_.begin());
}

std::optional<std::size_t> RoutedPartition::index_of(const Ipv4Prefix& prefix) const noexcept {
  auto it = std::lower_bound(prefixes_.begin(), prefixes_.end(), prefix);
  if (it == prefixes_.end() || *it != prefix)
    return std::nullopt;
  return static_cast<std::size_t>(it - prefixes_.begin());
}

std::vector<Ipv4Prefix> deaggregate(const Ipv4Prefix& l_prefix,
                                    std::span<const Ipv4Prefix> m_prefixes) {
  std::vector<Ipv4Prefix> inner(m_prefixes.begin(), m_prefixes.end());
  std::sort(inner.begin(), inner.end());
  for (std::size_t i = 0; i < inner.size(); ++i) {
    if (inner[i] == l_prefix || !l_prefix.contains(inner[i]))
      throw InvalidInput(inner[i].to_string() + " is not strictly contained in " +
                         l_prefix.to_string());
    if (i > 0 && inner[i] == inner[i - 1])
      throw InvalidInput("m-prefix " + inner[i].to_string() + " listed twice");
  }
  std::vector<Ipv4Prefix> out;
  split_around(l_prefix, inner, out);
  return out;
}

RoutedPartition build_partition(const AnnouncedPrefixTable& table, PartitionMode mode) {
  std::vector<Ipv4Prefix> out;
  for_each_group(table, [&](const Ipv4Prefix& top, std::span<const Ipv4Prefix> nested) {
    if (mode == PartitionMode::less_specific)
      out.push_back(top);
    else
      split_around(top, nested, out);
  });
  return {mode, std::move(out)};
}

std::optional<Ipv4Prefix> longest_match(const RoutedPartition& partition, Ipv4Address addr) {
  if (auto idx = partition.index_of(addr))
    return partition.prefixes()[*idx];
  return std::nullopt;
}

TableSummary summarize(const AnnouncedPrefixTable& table) {
  TableSummary summary;
  summary.prefixes = table.size();
  for_each_group(table, [&](const Ipv4Prefix& top, std::span<const Ipv4Prefix> nested) {
    summary.advertised_addresses += top.size();
    summary.m_prefixes += nested.size();
    std::optional<Ipv4Prefix> outer;
    for (const auto& p : nested) {
      if (outer && outer->contains(p))
        continue;
      outer = p;
      summary.m_prefix_addresses += p.size();
    }
  });
  return summary;
}

} // namespace tass
