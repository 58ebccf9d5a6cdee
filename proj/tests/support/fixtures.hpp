#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <string>
#include <unordered_set>
#include <vector>

#include "tass/ingest.hpp"
#include "tass/partition.hpp"
#include "tass/prefix.hpp"

namespace tass::fixtures {

using Rng = std::mt19937_64;

/// {100.0.0.0/8, 100.0.0.0/12}
inline AnnouncedPrefixTable nested_pair_table() {
  AnnouncedPrefixTable t;
  t.add(parse_prefix("100.0.0.0/8"), {"64496"});
  t.add(parse_prefix("100.0.0.0/12"), {"64497"});
  return t;
}

inline int uniform_int(Rng& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

/// Random announced prefixes inside `region`, lengths in [min_len, max_len].
/// Short prefixes are rarer than long ones so that nesting is common.
inline AnnouncedPrefixTable random_table(Rng& rng, const Ipv4Prefix& region, std::size_t count,
                                         int min_len, int max_len) {
  AnnouncedPrefixTable t;
  std::uniform_int_distribution<std::uint64_t> offset(0, region.size() - 1);
  for (std::size_t i = 0; i < count; ++i) {
    // Skewed towards long prefixes: max of two draws.
    const int len = std::max(uniform_int(rng, min_len, max_len), uniform_int(rng, min_len, max_len));
    const auto addr = static_cast<Ipv4Address>(region.network() + offset(rng));
    t.add(Ipv4Prefix::covering(addr, len), {std::to_string(64496 + uniform_int(rng, 0, 15))});
  }
  return t;
}

/// `count` pairwise disjoint prefixes: one per consecutive /16 starting at
/// 20.0.0.0, each of random length in [16, max_len].
inline std::vector<Ipv4Prefix> disjoint_prefixes(Rng& rng, std::size_t count, int max_len = 28) {
  std::vector<Ipv4Prefix> out;
  for (std::size_t i = 0; i < count; ++i) {
    const auto base = static_cast<Ipv4Address>(0x14000000u + (static_cast<Ipv4Address>(i) << 16));
    const int len = uniform_int(rng, 16, max_len);
    const auto offset = static_cast<Ipv4Address>(uniform_int(rng, 0, 0xffff));
    out.push_back(Ipv4Prefix::covering(base | offset, len));
  }
  return out;
}

/// Up to `hosts` distinct addresses drawn uniformly from `prefix`.
inline std::vector<Ipv4Address> hosts_in(Rng& rng, const Ipv4Prefix& prefix, std::uint64_t hosts) {
  hosts = std::min<std::uint64_t>(hosts, prefix.size());
  std::unordered_set<Ipv4Address> picked;
  std::uniform_int_distribution<std::uint64_t> offset(0, prefix.size() - 1);
  if (hosts * 2 > prefix.size()) {
    std::vector<Ipv4Address> all(prefix.size());
    for (std::uint64_t i = 0; i < prefix.size(); ++i)
      all[i] = static_cast<Ipv4Address>(prefix.network() + i);
    std::shuffle(all.begin(), all.end(), rng);
    all.resize(hosts);
    return all;
  }
  while (picked.size() < hosts)
    picked.insert(static_cast<Ipv4Address>(prefix.network() + offset(rng)));
  return {picked.begin(), picked.end()};
}

inline ScanSnapshot make_snapshot(std::vector<Ipv4Address> addrs, std::string captured_at,
                                  std::string protocol = "http") {
  ScanSnapshot s;
  s.protocol = std::move(protocol);
  s.captured_at = captured_at;
  s.source_id = std::move(captured_at);
  s.addresses = std::move(addrs);
  s.normalize();
  return s;
}

} // namespace tass::fixtures
