#include <sstream>

#include "doctest.h"
#include "fixtures.hpp"
#include "oracles.hpp"
#include "tass/error.hpp"
#include "tass/selector.hpp"

using namespace tass;

namespace {

RoutedPartition nested_pair_partition() {
  return build_partition(fixtures::nested_pair_table(), PartitionMode::more_specific);
}

// Three /24s holding 50, 30 and 20 hosts: shares 0.5, 0.3, 0.2.
struct ThreeShares {
  RoutedPartition partition{PartitionMode::less_specific,
                            {parse_prefix("192.0.2.0/24"), parse_prefix("198.51.100.0/24"),
                             parse_prefix("203.0.113.0/24")}};
  std::vector<PrefixDensityRecord> ranked;

  ThreeShares() {
    std::map<Ipv4Prefix, std::uint64_t> counts{{partition.prefixes()[0], 50},
                                               {partition.prefixes()[1], 30},
                                               {partition.prefixes()[2], 20}};
    ranked = rank_by_density(compute_densities(counts, 100).records);
  }
};

} // namespace

TEST_CASE("count_hosts attributes addresses to partition prefixes") {
  const auto part = nested_pair_partition();
  const auto snap = fixtures::make_snapshot({parse_address("100.1.0.1"), parse_address("100.200.0.1")}, "t0");
  const auto counts = count_hosts(part, snap);
  // brute-force attribution
  std::map<Ipv4Prefix, std::uint64_t> expected;
  for (auto a : snap.addresses)
    for (const auto& p : oracle::brute_force_matches(part.prefixes(), a))
      ++expected[p];
  CHECK(expected == std::map<Ipv4Prefix, std::uint64_t>{{parse_prefix("100.0.0.0/12"), 1},
                                                        {parse_prefix("100.128.0.0/9"), 1}});
  CHECK(counts.per_prefix == expected);
  CHECK(counts.unrouted == 0);

  CHECK(count_hosts(part, fixtures::make_snapshot({}, "t0")).per_prefix.empty());

  const auto outside = count_hosts(part, fixtures::make_snapshot({parse_address("9.0.0.1")}, "t0"));
  CHECK(outside.per_prefix.empty());
  CHECK(outside.unrouted == 1);
}

TEST_CASE("compute_densities") {
  const auto p24 = parse_prefix("192.0.2.0/24");
  const auto p20 = parse_prefix("10.0.0.0/20");
  auto t = compute_densities({{p24, 256}}, 256);
  REQUIRE(t.records.size() == 1);
  CHECK(t.records[0].density() == Ratio{1, 1});
  CHECK(t.records[0].density().value() == 1.0);

  t = compute_densities({{p20, 128}}, 128);
  CHECK(t.records[0].density().value() == 0.03125);
  CHECK(t.records[0].density() == Ratio{128, 4096});

  t = compute_densities({{p24, 50}, {p20, 150}}, 200);
  CHECK(t.records[1].coverage_share() == Ratio{1, 4});

  t = compute_densities({{p24, 0}}, 0);
  CHECK(t.records.empty());
  CHECK(t.empty_seed);

  CHECK_THROWS_AS(compute_densities({{p24, 257}}, 257), InvalidInput);
  CHECK_THROWS_AS(compute_densities({{p24, 10}}, 11), InvalidInput);
}

TEST_CASE("rank_by_density ordering and tie-breaks") {
  const auto a = parse_prefix("10.0.0.0/24");
  const auto b = parse_prefix("10.0.1.0/24");
  const auto c = parse_prefix("10.0.2.0/24");
  auto ranked = rank_by_density({{a, 128, 300}, {b, 230, 300}, {c, 26, 300}});
  CHECK(ranked[0].prefix == b);
  CHECK(ranked[1].prefix == a);
  CHECK(ranked[2].prefix == c);

  // equal density 1/16: a /26 with 4 hosts vs a /22 with 64... and a /24 with 16
  const auto small = parse_prefix("10.1.0.0/26");  // 4/64
  const auto big = parse_prefix("10.2.0.0/24");    // 16/256
  ranked = rank_by_density({{small, 4, 20}, {big, 16, 20}});
  // reference comparator with exact rationals
  CHECK(oracle::Rational(4, 64) == oracle::Rational(16, 256));
  CHECK(ranked[0].prefix == big);

  const auto lo = parse_prefix("10.3.0.0/24");
  const auto hi = parse_prefix("10.4.0.0/24");
  ranked = rank_by_density({{hi, 7, 14}, {lo, 7, 14}});
  CHECK(ranked[0].prefix == lo);
}

TEST_CASE("select_prefixes cut rule") {
  ThreeShares f;
  CHECK(select_prefixes(f.ranked, parse_decimal("0.7"), f.partition).k == 2);
  CHECK(select_prefixes(f.ranked, parse_decimal("0.5"), f.partition).k == 2);
  CHECK(select_prefixes(f.ranked, parse_decimal("0.49"), f.partition).k == 1);
  CHECK(select_prefixes(f.ranked, parse_decimal("0.8"), f.partition).k == 3);
  const auto all = select_prefixes(f.ranked, parse_decimal("1"), f.partition);
  CHECK(all.k == 3);
  CHECK(all.selected_prefixes.size() == 3);
  CHECK(all.cum_host_coverage() == Ratio{1, 1});
}

TEST_CASE("select_prefixes errors") {
  ThreeShares f;
  CHECK_THROWS_WITH_AS(select_prefixes({}, parse_decimal("0.5"), f.partition),
                       "no responsive prefixes", InvalidInput);
  CHECK_THROWS_AS(select_prefixes(f.ranked, Ratio{0, 1}, f.partition), InvalidInput);
  CHECK_THROWS_AS(select_prefixes(f.ranked, Ratio{3, 2}, f.partition), InvalidInput);
  auto unsorted = f.ranked;
  std::swap(unsorted[0], unsorted[2]);
  CHECK_THROWS_AS(select_prefixes(unsorted, parse_decimal("0.5"), f.partition), InvalidInput);
  const RoutedPartition other(PartitionMode::less_specific, {parse_prefix("8.0.0.0/8")});
  CHECK_THROWS_AS(select_prefixes(f.ranked, parse_decimal("0.5"), other), InvalidInput);
}

TEST_CASE("address_space_coverage") {
  ThreeShares f;
  const auto all = select_prefixes(f.ranked, parse_decimal("1"), f.partition);
  CHECK(address_space_coverage(all, f.partition.total_addresses()) == Ratio{1, 1});

  const RoutedPartition p8(PartitionMode::less_specific, {parse_prefix("10.0.0.0/8")});
  const auto ranked = rank_by_density(compute_densities({{parse_prefix("10.0.0.0/8"), 5}}, 5).records);
  const auto one = select_prefixes(ranked, parse_decimal("1"), p8);
  const auto cov = address_space_coverage(one, std::uint64_t{1} << 32);
  CHECK(cov == Ratio{1, 256});
  CHECK(cov.value() == doctest::Approx(0.0039).epsilon(0.01));
  CHECK_THROWS_AS(address_space_coverage(one, 0), InvalidInput);
}

TEST_CASE("emit_statistics rows") {
  ThreeShares f;
  const auto rows = emit_statistics(select_prefixes(f.ranked, parse_decimal("0.5"), f.partition));
  REQUIRE(rows.size() == 3);
  CHECK(rows.back().cum_host_coverage == Ratio{1, 1});
  CHECK(rows.back().cum_address_coverage == Ratio{1, 1});
  for (std::size_t i = 1; i < rows.size(); ++i) {
    CHECK(rows[i].rank == i + 1);
    CHECK(rows[i - 1].cum_host_coverage <= rows[i].cum_host_coverage);
    CHECK(rows[i - 1].cum_address_coverage <= rows[i].cum_address_coverage);
    CHECK(rows[i - 1].density >= rows[i].density);
  }

  std::ostringstream csv;
  write_statistics_csv(rows, csv);
  CHECK(csv.str() ==
        "rank,prefix,length,host_count,density,cum_host_coverage,cum_addr_coverage\n"
        "1,192.0.2.0,24,50,0.195312,0.500000,0.333333\n"
        "2,198.51.100.0,24,30,0.117188,0.800000,0.666667\n"
        "3,203.0.113.0,24,20,0.078125,1.000000,1.000000\n");
}

TEST_CASE("target list is sorted by network") {
  ThreeShares f;
  // reverse the densities so rank order differs from address order
  std::map<Ipv4Prefix, std::uint64_t> counts{{f.partition.prefixes()[0], 20},
                                             {f.partition.prefixes()[1], 30},
                                             {f.partition.prefixes()[2], 50}};
  const auto ranked = rank_by_density(compute_densities(counts, 100).records);
  const auto sel = select_prefixes(ranked, parse_decimal("0.6"), f.partition);
  CHECK(sel.selected_prefixes[0] == parse_prefix("203.0.113.0/24"));
  std::ostringstream out;
  write_target_list(sel, out);
  CHECK(out.str() == "198.51.100.0/24\n203.0.113.0/24\n");
}

TEST_CASE("property: minimality, monotonicity and conservation") {
  fixtures::Rng rng(31);
  const char* phis[] = {"0.1", "0.5", "0.7", "0.9", "0.95", "0.99", "1"};
  for (int round = 0; round < 60; ++round) {
    const auto table = fixtures::random_table(rng, parse_prefix("10.0.0.0/12"), 1 + rng() % 150, 14, 28);
    const auto part = build_partition(table, round % 2 ? PartitionMode::more_specific
                                                       : PartitionMode::less_specific);
    std::vector<Ipv4Address> addrs;
    for (int i = 0; i < 2000; ++i)
      addrs.push_back(static_cast<Ipv4Address>(0x09f00000u + rng() % (3u << 20)));
    const auto snap = fixtures::make_snapshot(addrs, "t0");

    const auto counts = count_hosts(part, snap, 1);
    CHECK(counts.routed() + counts.unrouted == snap.size());
    CHECK(count_hosts(part, snap, 3).per_prefix == counts.per_prefix);
    if (counts.routed() == 0)
      continue;
    const auto ranked = rank_by_density(compute_densities(counts.per_prefix, counts.routed()).records);

    std::size_t prev_k = 0;
    Ratio prev_cov{0, 1};
    for (const char* text : phis) {
      const auto phi = parse_decimal(text);
      const auto sel = select_prefixes(ranked, phi, part);
      const auto n = sel.total_hosts;
      std::uint64_t before = 0;
      for (std::size_t i = 0; i + 1 < sel.k; ++i)
        before += ranked[i].host_count;
      if (phi < Ratio{1, 1}) {
        CHECK(Ratio{before, n} <= phi);
        CHECK(phi < sel.cum_host_coverage());
      } else {
        CHECK(sel.k == ranked.size());
      }
      CHECK(sel.k >= prev_k);
      const auto cov = address_space_coverage(sel, part.total_addresses());
      CHECK(prev_cov <= cov);
      prev_k = sel.k;
      prev_cov = cov;
    }
  }
}
