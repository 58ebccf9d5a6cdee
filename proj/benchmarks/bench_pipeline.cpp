#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "tass/partition.hpp"
#include "tass/selector.hpp"

namespace {

tass::AnnouncedPrefixTable synthetic_table(std::size_t count) {
  std::mt19937_64 rng(1);
  tass::AnnouncedPrefixTable table;
  std::vector<tass::Ipv4Prefix> tops;
  while (table.size() < count / 5) {
    const auto p = tass::Ipv4Prefix::covering(static_cast<tass::Ipv4Address>(rng()), 8 + static_cast<int>(rng() % 13));
    if (table.add(p, {"64496"}))
      tops.push_back(p);
  }
  while (table.size() < count) {
    const auto& top = tops[rng() % tops.size()];
    const int len = top.length() + 1 + static_cast<int>(rng() % static_cast<unsigned>(24 - top.length()));
    const auto addr = static_cast<tass::Ipv4Address>(top.network() + rng() % top.size());
    table.add(tass::Ipv4Prefix::covering(addr, len), {"64497"});
  }
  return table;
}

tass::ScanSnapshot synthetic_snapshot(const tass::RoutedPartition& part, std::size_t hosts) {
  std::mt19937_64 rng(2);
  tass::ScanSnapshot snap;
  snap.protocol = "http";
  snap.captured_at = "2015-09";
  const auto prefixes = part.prefixes();
  for (std::size_t i = 0; i < hosts; ++i) {
    const auto& p = prefixes[rng() % prefixes.size()];
    snap.addresses.push_back(static_cast<tass::Ipv4Address>(p.network() + rng() % p.size()));
  }
  snap.normalize();
  return snap;
}

void BM_BuildPartition(benchmark::State& state) {
  const auto table = synthetic_table(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state)
    benchmark::DoNotOptimize(tass::build_partition(table, tass::PartitionMode::more_specific));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_BuildPartition)->Arg(10000)->Arg(100000)->Unit(benchmark::kMillisecond);

void BM_CountHosts(benchmark::State& state) {
  const auto part = tass::build_partition(synthetic_table(100000), tass::PartitionMode::more_specific);
  const auto snap = synthetic_snapshot(part, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state)
    benchmark::DoNotOptimize(tass::count_hosts(part, snap, 1));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(snap.size()));
}
BENCHMARK(BM_CountHosts)->Arg(100000)->Arg(1000000)->Unit(benchmark::kMillisecond);

void BM_Select(benchmark::State& state) {
  const auto part = tass::build_partition(synthetic_table(100000), tass::PartitionMode::more_specific);
  const auto snap = synthetic_snapshot(part, 1000000);
  for (auto _ : state)
    benchmark::DoNotOptimize(tass::select_from_snapshot(part, snap, tass::Ratio{95, 100}, 1));
}
BENCHMARK(BM_Select)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
